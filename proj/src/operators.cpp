#include "stylevo/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "stylevo/color.hpp"
#include "stylevo/kernels.hpp"

namespace stylevo {

std::string OperatorId::label() const {
    switch (kind) {
    case OpKind::Normalize: return "normalize";
    case OpKind::Blur: return "blur";
    case OpKind::Brighten: return "brighten";
    case OpKind::Darken: return "darken";
    case OpKind::Contrast: return "contrast";
    case OpKind::Sharpen: return "sharpen";
    case OpKind::AdaIn: return "adain";
    case OpKind::Cacti: return "cacti";
    case OpKind::External: return name;
    case OpKind::Stop: return "stop";
    }
    return "?";
}

std::optional<OpKind> builtin_from_label(std::string_view label) {
    if (label == "normalize") return OpKind::Normalize;
    if (label == "blur") return OpKind::Blur;
    if (label == "brighten") return OpKind::Brighten;
    if (label == "darken") return OpKind::Darken;
    if (label == "contrast") return OpKind::Contrast;
    if (label == "sharpen") return OpKind::Sharpen;
    if (label == "adain") return OpKind::AdaIn;
    if (label == "cacti") return OpKind::Cacti;
    return std::nullopt;
}

namespace {

constexpr double kBlurSigma = 2.0;
constexpr double kBrightenFactor = 1.5;
constexpr double kDarkenFactor = 0.7;
constexpr double kContrastFactor = 1.5;
constexpr double kSharpenFactor = 2.0;

Image scale_clamped(const Image& image, double factor) {
    Image out(image.width, image.height);
    const std::int64_t n = static_cast<std::int64_t>(image.data.size());
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out.data[i] = clamp01(image.data[i] * factor);
    return out;
}

double mean_luminance(const Image& image) {
    const Image perc = to_perceptual(image);
    return kernels::moments(perc.plane(0), perc.width, perc.height).mean;
}

Image contrast(const Image& image) {
    const double pivot = mean_luminance(image);
    Image out(image.width, image.height);
    const std::int64_t n = static_cast<std::int64_t>(image.data.size());
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i)
        out.data[i] = clamp01(pivot + kContrastFactor * (image.data[i] - pivot));
    return out;
}

Image blur(const Image& image) {
    Image out(image.width, image.height);
    for (int c = 0; c < Image::channels; ++c)
        kernels::gaussian_blur(image.plane(c), out.plane(c), image.width, image.height, kBlurSigma);
    return out;
}

Image sharpen(const Image& image) {
    Image out(image.width, image.height);
    std::vector<double> low(image.pixels());
    for (int c = 0; c < Image::channels; ++c) {
        kernels::gaussian_blur(image.plane(c), low.data(), image.width, image.height, kBlurSigma);
        const double* src = image.plane(c);
        double* dst = out.plane(c);
        const std::int64_t n = static_cast<std::int64_t>(image.pixels());
#pragma omp parallel for
        for (std::int64_t i = 0; i < n; ++i)
            dst[i] = clamp01(src[i] + (kSharpenFactor - 1.0) * (src[i] - low[i]));
    }
    return out;
}

// 256-bin CDF matching per RGB channel against the style image.
Image histogram_match(const Image& image, const Image& style) {
    if (style.empty())
        throw OperatorError("normalize: style image is empty");
    Image out(image.width, image.height);
    for (int c = 0; c < Image::channels; ++c) {
        const auto hx = kernels::hist_quant(image.plane(c), image.width, image.height);
        const auto hy = kernels::hist_quant(style.plane(c), style.width, style.height);
        const double nx = static_cast<double>(image.pixels());
        const double ny = static_cast<double>(style.pixels());

        std::array<double, 256> lut{};
        std::int64_t cum_x = 0;
        std::int64_t cum_y = hy[0];
        int j = 0;
        for (int i = 0; i < 256; ++i) {
            cum_x += hx[i];
            const double cdf_x = static_cast<double>(cum_x) / nx;
            while (static_cast<double>(cum_y) / ny < cdf_x && j < 255) {
                ++j;
                cum_y += hy[j];
            }
            lut[i] = j / 255.0;
        }

        const double* src = image.plane(c);
        double* dst = out.plane(c);
        const std::int64_t n = static_cast<std::int64_t>(image.pixels());
#pragma omp parallel for
        for (std::int64_t i = 0; i < n; ++i) {
            const long b = std::lround(src[i] * 255.0);
            dst[i] = lut[b < 0 ? 0 : (b > 255 ? 255 : b)];
        }
    }
    return out;
}

struct ChannelStats {
    double mean;
    double sigma;
};

ChannelStats channel_stats(const double* plane, int w, int h) {
    const kernels::Moments m = kernels::moments(plane, w, h);
    return {m.mean, std::sqrt(m.var)};
}

} // namespace

Image apply_classical(const OperatorId& op, const Image& image, const StyleContext& ctx) {
    if (image.empty()) throw OperatorError("operator input image is empty");
    switch (op.kind) {
    case OpKind::Normalize: return histogram_match(image, ctx.style_image);
    case OpKind::Blur: return blur(image);
    case OpKind::Brighten: return scale_clamped(image, kBrightenFactor);
    case OpKind::Darken: return scale_clamped(image, kDarkenFactor);
    case OpKind::Contrast: return contrast(image);
    case OpKind::Sharpen: return sharpen(image);
    default:
        throw OperatorError("apply_classical: " + op.label() + " is not a classical operator");
    }
}

Image apply_adain(const Image& image, const StyleContext& ctx) {
    if (image.empty()) throw OperatorError("adain: input image is empty");
    if (ctx.style_image.empty()) throw OperatorError("adain: style image is empty");

    const Image xp = to_perceptual(image);
    const Image yp = to_perceptual(ctx.style_image);
    Image aligned(xp.width, xp.height);
    for (int c = 0; c < Image::channels; ++c) {
        const ChannelStats sx = channel_stats(xp.plane(c), xp.width, xp.height);
        const ChannelStats sy = channel_stats(yp.plane(c), yp.width, yp.height);
        const double* src = xp.plane(c);
        double* dst = aligned.plane(c);
        const std::int64_t n = static_cast<std::int64_t>(xp.pixels());
#pragma omp parallel for
        for (std::int64_t i = 0; i < n; ++i)
            dst[i] = clamp01(sy.sigma * (src[i] - sx.mean) / (sx.sigma + kAdainEps) + sy.mean);
    }
    return from_perceptual(aligned);
}

Image apply_cacti(const Image& image, const StyleContext& ctx) {
    if (image.empty()) throw OperatorError("cacti: input image is empty");
    if (ctx.style_image.empty()) throw OperatorError("cacti: style image is empty");
    if (!ctx.content_mask)
        throw OperatorError("cacti: content mask is missing");
    if (!ctx.style_mask)
        throw OperatorError("cacti: style mask is missing");
    if (!dims_match(image, *ctx.content_mask))
        throw OperatorError("cacti: content mask dimensions do not match the image");
    if (!dims_match(ctx.style_image, *ctx.style_mask))
        throw OperatorError("cacti: style mask dimensions do not match the style image");

    const Image xp = to_perceptual(image);
    const Image yp = to_perceptual(ctx.style_image);
    const SegMask& cmask = *ctx.content_mask;
    const SegMask& smask = *ctx.style_mask;

    std::set<std::uint8_t> style_classes(smask.data.begin(), smask.data.end());
    std::set<std::uint8_t> content_classes(cmask.data.begin(), cmask.data.end());

    Image aligned(xp.width, xp.height);
    for (int c = 0; c < Image::channels; ++c) {
        const ChannelStats gx = channel_stats(xp.plane(c), xp.width, xp.height);
        const ChannelStats gy = channel_stats(yp.plane(c), yp.width, yp.height);

        // Per-class stats for classes present in both masks; 256 slots keyed
        // by class id, flagged valid when usable.
        std::array<ChannelStats, 256> stats_x{};
        std::array<ChannelStats, 256> stats_y{};
        std::array<bool, 256> shared{};
        for (std::uint8_t cls : content_classes) {
            if (!style_classes.count(cls)) continue;
            const auto mx = kernels::masked_moments(xp.plane(c), cmask.data.data(),
                                                    xp.width, xp.height, cls);
            const auto my = kernels::masked_moments(yp.plane(c), smask.data.data(),
                                                    yp.width, yp.height, cls);
            stats_x[cls] = {mx.mean, std::sqrt(mx.var)};
            stats_y[cls] = {my.mean, std::sqrt(my.var)};
            shared[cls] = true;
        }

        const double* src = xp.plane(c);
        double* dst = aligned.plane(c);
        const std::int64_t n = static_cast<std::int64_t>(xp.pixels());
#pragma omp parallel for
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint8_t cls = cmask.data[i];
            const ChannelStats& sx = shared[cls] ? stats_x[cls] : gx;
            const ChannelStats& sy = shared[cls] ? stats_y[cls] : gy;
            dst[i] = clamp01(sy.sigma * (src[i] - sx.mean) / (sx.sigma + kAdainEps) + sy.mean);
        }
    }
    return from_perceptual(aligned);
}

} // namespace stylevo
