#include "stylevo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stylevo::kernels {

namespace {

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// One output row of a horizontal blur pass with replicate edges.
inline void blur_row_h(const double* src_row, double* dst_row, int w,
                       const double* taps, int radius) {
    for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            acc += taps[k + radius] * src_row[clampi(x + k, 0, w - 1)];
        }
        dst_row[x] = acc;
    }
}

// One output row of a vertical blur pass; clamps, since it is the final pass.
inline void blur_row_v(const double* tmp, double* dst_row, int w, int h, int y,
                       const double* taps, int radius) {
    for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            acc += taps[k + radius] * tmp[static_cast<std::size_t>(clampi(y + k, 0, h - 1)) * w + x];
        }
        dst_row[x] = clamp01(acc);
    }
}

inline void gradient_row(const double* src, double* dst_row, int w, int h, int y) {
    const double* up = src + static_cast<std::size_t>(clampi(y - 1, 0, h - 1)) * w;
    const double* dn = src + static_cast<std::size_t>(clampi(y + 1, 0, h - 1)) * w;
    const double* row = src + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
        const double gx = (row[clampi(x + 1, 0, w - 1)] - row[clampi(x - 1, 0, w - 1)]) * 0.5;
        const double gy = (dn[x] - up[x]) * 0.5;
        dst_row[x] = clamp01(0.5 * std::sqrt(gx * gx + gy * gy));
    }
}

inline double row_sum(const double* row, int w) {
    double s = 0.0;
    for (int x = 0; x < w; ++x) s += row[x];
    return s;
}

inline double row_sumsq(const double* row, int w, double mean) {
    double s = 0.0;
    for (int x = 0; x < w; ++x) {
        const double d = row[x] - mean;
        s += d * d;
    }
    return s;
}

inline double row_cross(const double* xr, const double* yr, int w, double mx, double my) {
    double s = 0.0;
    for (int x = 0; x < w; ++x) s += (xr[x] - mx) * (yr[x] - my);
    return s;
}

inline double rbf_row(const double* ai, const double* b, std::size_t nb, std::size_t dim,
                      double inv_two_h2) {
    double s = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
        const double* bj = b + j * dim;
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = ai[k] - bj[k];
            d2 += d * d;
        }
        s += std::exp(-d2 * inv_two_h2);
    }
    return s;
}

} // namespace

std::vector<double> gaussian_taps(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_taps: sigma must be positive");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(2 * radius + 1);
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double v = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
        taps[k + radius] = v;
        sum += v;
    }
    for (double& v : taps) v /= sum;
    return taps;
}

void gaussian_blur(const double* src, double* dst, int w, int h, double sigma) {
    const std::vector<double> taps = gaussian_taps(sigma);
    const int radius = (static_cast<int>(taps.size()) - 1) / 2;
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        blur_row_h(src + static_cast<std::size_t>(y) * w, tmp.data() + static_cast<std::size_t>(y) * w, w,
                   taps.data(), radius);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        blur_row_v(tmp.data(), dst + static_cast<std::size_t>(y) * w, w, h, y, taps.data(), radius);
}

void gradient_magnitude(const double* src, double* dst, int w, int h) {
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        gradient_row(src, dst + static_cast<std::size_t>(y) * w, w, h, y);
}

Moments moments(const double* p, int w, int h) {
    const double n = static_cast<double>(w) * h;
    std::vector<double> part(h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) part[y] = row_sum(p + static_cast<std::size_t>(y) * w, w);
    double total = 0.0;
    for (int y = 0; y < h; ++y) total += part[y];
    const double mean = total / n;
#pragma omp parallel for
    for (int y = 0; y < h; ++y) part[y] = row_sumsq(p + static_cast<std::size_t>(y) * w, w, mean);
    double sq = 0.0;
    for (int y = 0; y < h; ++y) sq += part[y];
    return {mean, sq / n};
}

double covariance(const double* x, const double* y, int w, int h, double mean_x, double mean_y) {
    std::vector<double> part(h);
#pragma omp parallel for
    for (int r = 0; r < h; ++r)
        part[r] = row_cross(x + static_cast<std::size_t>(r) * w, y + static_cast<std::size_t>(r) * w, w,
                            mean_x, mean_y);
    double total = 0.0;
    for (int r = 0; r < h; ++r) total += part[r];
    return total / (static_cast<double>(w) * h);
}

std::vector<std::int64_t> hist_range(const double* p, int w, int h, int bins) {
    std::vector<std::int64_t> hist(bins, 0);
#pragma omp parallel
    {
        std::vector<std::int64_t> local(bins, 0);
#pragma omp for nowait
        for (int y = 0; y < h; ++y) {
            const double* row = p + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                const int b = std::min(bins - 1, static_cast<int>(row[x] * bins));
                ++local[b];
            }
        }
#pragma omp critical
        for (int b = 0; b < bins; ++b) hist[b] += local[b];
    }
    return hist;
}

std::vector<std::int64_t> hist_quant(const double* p, int w, int h) {
    std::vector<std::int64_t> hist(256, 0);
#pragma omp parallel
    {
        std::vector<std::int64_t> local(256, 0);
#pragma omp for nowait
        for (int y = 0; y < h; ++y) {
            const double* row = p + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                const int b = static_cast<int>(std::lround(row[x] * 255.0));
                ++local[clampi(b, 0, 255)];
            }
        }
#pragma omp critical
        for (int b = 0; b < 256; ++b) hist[b] += local[b];
    }
    return hist;
}

double rbf_mean(const double* a, std::size_t na, const double* b, std::size_t nb,
                std::size_t dim, double bandwidth) {
    const double inv_two_h2 = 1.0 / (2.0 * bandwidth * bandwidth);
    const std::int64_t n = static_cast<std::int64_t>(na);
    std::vector<double> part(na);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        part[i] = rbf_row(a + static_cast<std::size_t>(i) * dim, b, nb, dim, inv_two_h2);
    double total = 0.0;
    for (std::size_t i = 0; i < na; ++i) total += part[i];
    return total / (static_cast<double>(na) * static_cast<double>(nb));
}

std::vector<double> pairwise_distances(const double* p, std::size_t n, std::size_t dim) {
    if (n < 2) return {};
    std::vector<double> out(n * (n - 1) / 2);
    const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < ni - 1; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        std::size_t idx = ui * n - ui * (ui + 1) / 2;
        const double* pi = p + ui * dim;
        for (std::size_t j = ui + 1; j < n; ++j) {
            const double* pj = p + j * dim;
            double d2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double d = pi[k] - pj[k];
                d2 += d * d;
            }
            out[idx++] = std::sqrt(d2);
        }
    }
    return out;
}

MaskedMoments masked_moments(const double* p, const std::uint8_t* mask, int w, int h,
                             std::uint8_t cls) {
    std::vector<double> part(h);
    std::vector<std::size_t> cnt(h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* row = p + static_cast<std::size_t>(y) * w;
        const std::uint8_t* mrow = mask + static_cast<std::size_t>(y) * w;
        double s = 0.0;
        std::size_t c = 0;
        for (int x = 0; x < w; ++x) {
            if (mrow[x] == cls) {
                s += row[x];
                ++c;
            }
        }
        part[y] = s;
        cnt[y] = c;
    }
    MaskedMoments m;
    double total = 0.0;
    for (int y = 0; y < h; ++y) {
        total += part[y];
        m.count += cnt[y];
    }
    if (m.count == 0) return m;
    m.mean = total / static_cast<double>(m.count);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* row = p + static_cast<std::size_t>(y) * w;
        const std::uint8_t* mrow = mask + static_cast<std::size_t>(y) * w;
        double s = 0.0;
        for (int x = 0; x < w; ++x) {
            if (mrow[x] == cls) {
                const double d = row[x] - m.mean;
                s += d * d;
            }
        }
        part[y] = s;
    }
    double sq = 0.0;
    for (int y = 0; y < h; ++y) sq += part[y];
    m.var = sq / static_cast<double>(m.count);
    return m;
}

namespace serial {

void gaussian_blur(const double* src, double* dst, int w, int h, double sigma) {
    const std::vector<double> taps = gaussian_taps(sigma);
    const int radius = (static_cast<int>(taps.size()) - 1) / 2;
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        blur_row_h(src + static_cast<std::size_t>(y) * w, tmp.data() + static_cast<std::size_t>(y) * w, w,
                   taps.data(), radius);
    for (int y = 0; y < h; ++y)
        blur_row_v(tmp.data(), dst + static_cast<std::size_t>(y) * w, w, h, y, taps.data(), radius);
}

void gradient_magnitude(const double* src, double* dst, int w, int h) {
    for (int y = 0; y < h; ++y)
        gradient_row(src, dst + static_cast<std::size_t>(y) * w, w, h, y);
}

Moments moments(const double* p, int w, int h) {
    const double n = static_cast<double>(w) * h;
    double total = 0.0;
    for (int y = 0; y < h; ++y) total += row_sum(p + static_cast<std::size_t>(y) * w, w);
    const double mean = total / n;
    double sq = 0.0;
    for (int y = 0; y < h; ++y) sq += row_sumsq(p + static_cast<std::size_t>(y) * w, w, mean);
    return {mean, sq / n};
}

double covariance(const double* x, const double* y, int w, int h, double mean_x, double mean_y) {
    double total = 0.0;
    for (int r = 0; r < h; ++r)
        total += row_cross(x + static_cast<std::size_t>(r) * w, y + static_cast<std::size_t>(r) * w, w,
                           mean_x, mean_y);
    return total / (static_cast<double>(w) * h);
}

std::vector<std::int64_t> hist_range(const double* p, int w, int h, int bins) {
    std::vector<std::int64_t> hist(bins, 0);
    for (int y = 0; y < h; ++y) {
        const double* row = p + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x)
            ++hist[std::min(bins - 1, static_cast<int>(row[x] * bins))];
    }
    return hist;
}

std::vector<std::int64_t> hist_quant(const double* p, int w, int h) {
    std::vector<std::int64_t> hist(256, 0);
    for (int y = 0; y < h; ++y) {
        const double* row = p + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x)
            ++hist[clampi(static_cast<int>(std::lround(row[x] * 255.0)), 0, 255)];
    }
    return hist;
}

double rbf_mean(const double* a, std::size_t na, const double* b, std::size_t nb,
                std::size_t dim, double bandwidth) {
    const double inv_two_h2 = 1.0 / (2.0 * bandwidth * bandwidth);
    double total = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        total += rbf_row(a + i * dim, b, nb, dim, inv_two_h2);
    return total / (static_cast<double>(na) * static_cast<double>(nb));
}

} // namespace serial

} // namespace stylevo::kernels
