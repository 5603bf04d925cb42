#include "stylevo/color.hpp"

#include <stdexcept>

namespace stylevo {

Image to_perceptual(const Image& rgb) {
    if (rgb.empty()) throw std::invalid_argument("to_perceptual: empty image");
    Image out(rgb.width, rgb.height);
    const double* r = rgb.plane(0);
    const double* g = rgb.plane(1);
    const double* b = rgb.plane(2);
    double* luma = out.plane(0);
    double* ca = out.plane(1);
    double* cb = out.plane(2);
    const std::int64_t n = static_cast<std::int64_t>(rgb.pixels());
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) {
        luma[i] = clamp01(0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i]);
        ca[i] = clamp01((r[i] - g[i] + 1.0) * 0.5);
        cb[i] = clamp01((0.5 * r[i] + 0.5 * g[i] - b[i] + 1.0) * 0.5);
    }
    return out;
}

Image from_perceptual(const Image& perceptual) {
    if (perceptual.empty()) throw std::invalid_argument("from_perceptual: empty image");
    Image out(perceptual.width, perceptual.height);
    const double* luma = perceptual.plane(0);
    const double* ca = perceptual.plane(1);
    const double* cb = perceptual.plane(2);
    double* r = out.plane(0);
    double* g = out.plane(1);
    double* b = out.plane(2);
    const std::int64_t n = static_cast<std::int64_t>(perceptual.pixels());
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) {
        // Invert Y = 0.5 s - 0.144 a - 0.114 t with s = R+G, a = R-G, t = 0.5 s - B.
        const double a = 2.0 * ca[i] - 1.0;
        const double t = 2.0 * cb[i] - 1.0;
        const double s = 2.0 * luma[i] + 0.288 * a + 0.228 * t;
        r[i] = clamp01((s + a) * 0.5);
        g[i] = clamp01((s - a) * 0.5);
        b[i] = clamp01(0.5 * s - t);
    }
    return out;
}

} // namespace stylevo
