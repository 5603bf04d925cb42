#include "stylevo/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stylevo {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

void validate(const Image& img) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("image dimensions must be at least 1x1");
    if (img.data.size() != img.pixels() * Image::channels)
        throw std::invalid_argument("image buffer size does not match dimensions");
    for (double v : img.data) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw std::invalid_argument("image intensity outside [0,1]: " + std::to_string(v));
    }
}

Image resize_bilinear(const Image& src, int out_w, int out_h) {
    if (src.empty() || out_w < 1 || out_h < 1)
        throw std::invalid_argument("resize_bilinear: invalid dimensions");
    if (out_w == src.width && out_h == src.height) return src;

    Image dst(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;
    for (int c = 0; c < Image::channels; ++c) {
        const double* sp = src.plane(c);
        double* dp = dst.plane(c);
#pragma omp parallel for
        for (int y = 0; y < out_h; ++y) {
            const double fy = std::max(0.0, (y + 0.5) * sy - 0.5);
            const int y0 = std::min(src.height - 1, static_cast<int>(fy));
            const int y1 = std::min(src.height - 1, y0 + 1);
            const double wy = fy - y0;
            for (int x = 0; x < out_w; ++x) {
                const double fx = std::max(0.0, (x + 0.5) * sx - 0.5);
                const int x0 = std::min(src.width - 1, static_cast<int>(fx));
                const int x1 = std::min(src.width - 1, x0 + 1);
                const double wx = fx - x0;
                const double top = sp[static_cast<std::size_t>(y0) * src.width + x0] * (1.0 - wx) +
                                   sp[static_cast<std::size_t>(y0) * src.width + x1] * wx;
                const double bot = sp[static_cast<std::size_t>(y1) * src.width + x0] * (1.0 - wx) +
                                   sp[static_cast<std::size_t>(y1) * src.width + x1] * wx;
                dp[static_cast<std::size_t>(y) * out_w + x] = clamp01(top * (1.0 - wy) + bot * wy);
            }
        }
    }
    return dst;
}

SegMask resize_nearest(const SegMask& src, int out_w, int out_h) {
    if (src.empty() || out_w < 1 || out_h < 1)
        throw std::invalid_argument("resize_nearest: invalid dimensions");
    if (out_w == src.width && out_h == src.height) return src;

    SegMask dst(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;
#pragma omp parallel for
    for (int y = 0; y < out_h; ++y) {
        const int syi = std::min(src.height - 1, static_cast<int>((y + 0.5) * sy));
        for (int x = 0; x < out_w; ++x) {
            const int sxi = std::min(src.width - 1, static_cast<int>((x + 0.5) * sx));
            dst.at(y, x) = src.at(syi, sxi);
        }
    }
    return dst;
}

} // namespace stylevo
