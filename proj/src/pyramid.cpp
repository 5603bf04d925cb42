#include "stylevo/pyramid.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "stylevo/color.hpp"
#include "stylevo/kernels.hpp"

namespace stylevo {

namespace {

FeatureMap decimate2(const FeatureMap& src) {
    const int w = std::max(1, src.width / 2);
    const int h = std::max(1, src.height / 2);
    FeatureMap dst(w, h);
    for (int c = 0; c < FeatureMap::channels; ++c) {
        const double* sp = src.plane(c);
        double* dp = dst.plane(c);
#pragma omp parallel for
        for (int y = 0; y < h; ++y) {
            const double* srow = sp + static_cast<std::size_t>(2 * y) * src.width;
            double* drow = dp + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) drow[x] = srow[2 * x];
        }
    }
    return dst;
}

} // namespace

FeaturePyramid build_pyramid(const Image& image, int levels) {
    if (levels < 1) throw std::invalid_argument("build_pyramid: levels must be >= 1");
    if (image.empty()) throw std::invalid_argument("build_pyramid: empty image");

    FeaturePyramid pyr;
    pyr.levels.reserve(static_cast<std::size_t>(levels));

    const Image perc = to_perceptual(image);
    FeatureMap base(image.width, image.height);
    const std::size_t plane_bytes = base.pixels() * sizeof(double);
    std::memcpy(base.plane(FeatureMap::Luma), perc.plane(0), plane_bytes);
    std::memcpy(base.plane(FeatureMap::ChromaA), perc.plane(1), plane_bytes);
    std::memcpy(base.plane(FeatureMap::ChromaB), perc.plane(2), plane_bytes);
    kernels::gradient_magnitude(perc.plane(0), base.plane(FeatureMap::Gradient),
                                base.width, base.height);
    pyr.levels.push_back(std::move(base));

    for (int l = 1; l < levels; ++l) {
        const FeatureMap& prev = pyr.levels.back();
        FeatureMap blurred(prev.width, prev.height);
        for (int c = 0; c < FeatureMap::channels; ++c)
            kernels::gaussian_blur(prev.plane(c), blurred.plane(c), prev.width, prev.height, 1.0);
        pyr.levels.push_back(decimate2(blurred));
    }
    return pyr;
}

} // namespace stylevo
