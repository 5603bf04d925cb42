#include "stylevo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "stylevo/color.hpp"
#include "stylevo/kernels.hpp"

namespace stylevo {

StructureTexture structure_texture_level(const double* x, const double* y, int w, int h,
                                         double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("structure_texture_level: eps must be > 0");
    const kernels::Moments mx = kernels::moments(x, w, h);
    const kernels::Moments my = kernels::moments(y, w, h);
    const double cov = kernels::covariance(x, y, w, h, mx.mean, my.mean);
    StructureTexture st;
    st.s = (2.0 * mx.mean * my.mean + eps) / (mx.mean * mx.mean + my.mean * my.mean + eps);
    st.t = (2.0 * cov + eps) / (mx.var + my.var + eps);
    return st;
}

StructureTexture structure_texture_level(const std::vector<double>& x,
                                         const std::vector<double>& y, double eps) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("structure_texture_level: map shapes differ");
    return structure_texture_level(x.data(), y.data(), static_cast<int>(x.size()), 1, eps);
}

double dists(const Image& x, const Image& y, int levels) {
    if (x.width != y.width || x.height != y.height)
        throw std::invalid_argument("dists: image dimensions differ");
    const FeaturePyramid px = build_pyramid(x, levels);
    const FeaturePyramid py = build_pyramid(y, levels);

    double level_sum = 0.0;
    for (int l = 0; l < levels; ++l) {
        const FeatureMap& fx = px.levels[l];
        const FeatureMap& fy = py.levels[l];
        double channel_sum = 0.0;
        for (int c = 0; c < FeatureMap::channels; ++c) {
            const StructureTexture st =
                structure_texture_level(fx.plane(c), fy.plane(c), fx.width, fx.height);
            channel_sum += 0.5 * (st.s + st.t);
        }
        level_sum += channel_sum / FeatureMap::channels;
    }
    const double similarity = level_sum / levels;
    return clamp01(1.0 - similarity);
}

namespace {

std::vector<double> norm_hist16(const double* plane, int w, int h) {
    const auto counts = kernels::hist_range(plane, w, h, 16);
    const double n = static_cast<double>(w) * h;
    std::vector<double> out(16);
    for (int i = 0; i < 16; ++i) out[i] = static_cast<double>(counts[i]) / n;
    return out;
}

} // namespace

double style_distance(const Image& x, const Image& style) {
    const Image xp = to_perceptual(x);
    const Image yp = to_perceptual(style);

    double stats_sum = 0.0;
    for (int c = 0; c < Image::channels; ++c) {
        const kernels::Moments mx = kernels::moments(xp.plane(c), xp.width, xp.height);
        const kernels::Moments my = kernels::moments(yp.plane(c), yp.width, yp.height);
        const double term =
            std::abs(mx.mean - my.mean) + std::abs(std::sqrt(mx.var) - std::sqrt(my.var));
        stats_sum += std::min(1.0, term);
    }
    const double d_stats = stats_sum / Image::channels;

    const FeaturePyramid px = build_pyramid(x, kDefaultPyramidLevels);
    const FeaturePyramid py = build_pyramid(style, kDefaultPyramidLevels);
    const FeatureMap& cx = px.levels.back();
    const FeatureMap& cy = py.levels.back();
    const std::vector<double> hx = norm_hist16(cx.plane(FeatureMap::Luma), cx.width, cx.height);
    const std::vector<double> hy = norm_hist16(cy.plane(FeatureMap::Luma), cy.width, cy.height);
    double l1 = 0.0;
    for (int i = 0; i < 16; ++i) l1 += std::abs(hx[i] - hy[i]);
    const double d_hist = 0.5 * l1;

    return 0.5 * d_stats + 0.5 * d_hist;
}

void EmbeddingSet::append(const std::vector<double>& v) {
    if (rows == 0 && dim == 0) dim = v.size();
    if (v.size() != dim)
        throw std::invalid_argument("EmbeddingSet: inconsistent row dimension");
    data.insert(data.end(), v.begin(), v.end());
    ++rows;
}

std::vector<double> embed(const Image& image) {
    const FeaturePyramid pyr = build_pyramid(image, kDefaultPyramidLevels);
    std::vector<double> out;
    out.reserve(kEmbeddingDim);
    for (const FeatureMap& level : pyr.levels) {
        for (int c = 0; c < FeatureMap::channels; ++c) {
            const kernels::Moments m = kernels::moments(level.plane(c), level.width, level.height);
            out.push_back(m.mean);
            out.push_back(std::sqrt(m.var));
        }
    }
    const FeatureMap& coarse = pyr.levels.back();
    const std::vector<double> hist =
        norm_hist16(coarse.plane(FeatureMap::Luma), coarse.width, coarse.height);
    out.insert(out.end(), hist.begin(), hist.end());
    return out;
}

namespace {

struct Gaussian {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

Gaussian fit_gaussian(const EmbeddingSet& s) {
    const Eigen::Index n = static_cast<Eigen::Index>(s.rows);
    const Eigen::Index d = static_cast<Eigen::Index>(s.dim);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        s.data.data(), n, d);
    Gaussian g;
    g.mean = m.colwise().mean();
    const Eigen::MatrixXd centered = m.rowwise() - g.mean.transpose();
    g.cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
    return g;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
}

// Tr((Sa^(1/2) Sb Sa^(1/2))^(1/2)) with eigenvalues clamped at 0.
double trace_cross_sqrt(const Eigen::MatrixXd& sa, const Eigen::MatrixXd& sb) {
    const Eigen::MatrixXd root = psd_sqrt(sa);
    const Eigen::MatrixXd conj = root * sb * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (conj + conj.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

} // namespace

double frechet_distance(const EmbeddingSet& a, const EmbeddingSet& b) {
    if (a.dim != b.dim) throw std::invalid_argument("frechet_distance: dimensions differ");
    if (a.rows < 2 || b.rows < 2)
        throw std::invalid_argument("frechet_distance: each set needs at least 2 rows");
    for (double v : a.data)
        if (!std::isfinite(v)) throw std::invalid_argument("frechet_distance: non-finite input");
    for (double v : b.data)
        if (!std::isfinite(v)) throw std::invalid_argument("frechet_distance: non-finite input");

    const Gaussian ga = fit_gaussian(a);
    const Gaussian gb = fit_gaussian(b);
    const double mean_term = (ga.mean - gb.mean).squaredNorm();
    // Averaging the two (mathematically identical) orientations makes the
    // result bit-symmetric in (a, b).
    const double cross =
        0.5 * (trace_cross_sqrt(ga.cov, gb.cov) + trace_cross_sqrt(gb.cov, ga.cov));
    const double trace_sum = ga.cov.trace() + gb.cov.trace();
    const double value = mean_term + trace_sum - 2.0 * cross;
    return std::max(value, 0.0);
}

double median_pairwise_distance(const EmbeddingSet& a, const EmbeddingSet& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("median_pairwise_distance: dimensions differ");
    std::vector<double> pooled;
    pooled.reserve((a.rows + b.rows) * a.dim);
    pooled.insert(pooled.end(), a.data.begin(), a.data.end());
    pooled.insert(pooled.end(), b.data.begin(), b.data.end());
    std::vector<double> d =
        kernels::pairwise_distances(pooled.data(), a.rows + b.rows, a.dim);
    if (d.empty()) return 0.0;
    std::sort(d.begin(), d.end());
    const std::size_t k = d.size();
    return (k % 2 == 1) ? d[k / 2] : 0.5 * (d[k / 2 - 1] + d[k / 2]);
}

double mmd_rbf(const EmbeddingSet& a, const EmbeddingSet& b, double bandwidth) {
    if (a.dim != b.dim) throw std::invalid_argument("mmd_rbf: dimensions differ");
    if (a.rows < 1 || b.rows < 1)
        throw std::invalid_argument("mmd_rbf: each set needs at least 1 row");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("mmd_rbf: bandwidth must be > 0");
    const double kaa = kernels::rbf_mean(a.data.data(), a.rows, a.data.data(), a.rows, a.dim,
                                         bandwidth);
    const double kbb = kernels::rbf_mean(b.data.data(), b.rows, b.data.data(), b.rows, b.dim,
                                         bandwidth);
    const double kab = kernels::rbf_mean(a.data.data(), a.rows, b.data.data(), b.rows, a.dim,
                                         bandwidth);
    return std::max(kaa + kbb - 2.0 * kab, 0.0);
}

double mmd_rbf_median(const EmbeddingSet& a, const EmbeddingSet& b, double* resolved) {
    double h = median_pairwise_distance(a, b);
    if (h == 0.0) h = 1.0;
    if (resolved) *resolved = h;
    return mmd_rbf(a, b, h);
}

} // namespace stylevo
