#pragma once

#include <vector>

#include "stylevo/image.hpp"

namespace stylevo {

// One pyramid level: four feature channels in planar layout.
struct FeatureMap {
    int width = 0;
    int height = 0;
    std::vector<double> data; // data[(c*height + y)*width + x]

    static constexpr int channels = 4;
    enum Channel { Luma = 0, ChromaA = 1, ChromaB = 2, Gradient = 3 };

    FeatureMap() = default;
    FeatureMap(int w, int h)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * channels, 0.0) {}

    std::size_t pixels() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    double* plane(int c) { return data.data() + static_cast<std::size_t>(c) * pixels(); }
    const double* plane(int c) const { return data.data() + static_cast<std::size_t>(c) * pixels(); }
};

struct FeaturePyramid {
    std::vector<FeatureMap> levels;
};

inline constexpr int kDefaultPyramidLevels = 4;

// Level 0 holds the perceptual channels of the image plus the gradient
// magnitude of luminance; each further level is a Gaussian blur (sigma 1.0,
// 3-sigma taps, replicate edges) followed by 2x decimation, with dimensions
// halved (floor, minimum 1). Throws std::invalid_argument when levels < 1.
FeaturePyramid build_pyramid(const Image& image, int levels = kDefaultPyramidLevels);

} // namespace stylevo
