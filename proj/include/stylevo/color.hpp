#pragma once

#include "stylevo/image.hpp"

namespace stylevo {

// Working color space for statistics: channel 0 is luminance
// Y = 0.299 R + 0.587 G + 0.114 B, channels 1 and 2 are opponent chroma
// (R - G + 1) / 2 and (0.5 R + 0.5 G - B + 1) / 2, all clamped to [0,1].
Image to_perceptual(const Image& rgb);

// Algebraic inverse of to_perceptual, clamped to [0,1]. Round-trips within
// 1e-6 per pixel when no clamping occurs.
Image from_perceptual(const Image& perceptual);

} // namespace stylevo
