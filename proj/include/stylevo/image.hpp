#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace stylevo {

// H x W x 3 raster with planar channel layout and intensities in [0,1].
// A default-constructed Image is empty; every operator requires a non-empty,
// validated image.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data; // data[(c*height + y)*width + x]

    static constexpr int channels = 3;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * channels, fill) {}

    bool empty() const { return width <= 0 || height <= 0; }
    std::size_t pixels() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    double* plane(int c) { return data.data() + static_cast<std::size_t>(c) * pixels(); }
    const double* plane(int c) const { return data.data() + static_cast<std::size_t>(c) * pixels(); }

    double& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }

    bool operator==(const Image&) const = default;
};

// Per-pixel semantic class ids, row-major. Dimensions must match the image the
// mask annotates; that is checked where the pair is used.
struct SegMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    SegMask() = default;
    SegMask(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    bool empty() const { return width <= 0 || height <= 0; }
    std::uint8_t at(int y, int x) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int y, int x) {
        return data[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const SegMask&) const = default;
};

// Throws std::invalid_argument when an invariant is broken (non-positive
// dimensions, wrong buffer size, non-finite or out-of-range intensities).
void validate(const Image& img);

inline bool dims_match(const Image& img, const SegMask& mask) {
    return img.width == mask.width && img.height == mask.height;
}

double clamp01(double v);

Image resize_bilinear(const Image& src, int out_w, int out_h);
SegMask resize_nearest(const SegMask& src, int out_w, int out_h);

} // namespace stylevo
