#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stylevo/image.hpp"

namespace stylevo {

enum class OpKind {
    Normalize,
    Blur,
    Brighten,
    Darken,
    Contrast,
    Sharpen,
    AdaIn,
    Cacti,
    External,
    Stop,
};

// Identifier of one pipeline node. External operators carry the registered
// plugin name; Stop is the terminal node and is never applied to an image.
struct OperatorId {
    OpKind kind = OpKind::Stop;
    std::string name; // plugin name, External only

    bool operator==(const OperatorId&) const = default;

    static OperatorId builtin(OpKind k) { return {k, {}}; }
    static OperatorId external(std::string plugin_name) {
        return {OpKind::External, std::move(plugin_name)};
    }
    static OperatorId stop() { return {OpKind::Stop, {}}; }

    // Serialized name: "normalize", "blur", ..., "stop"; External uses the
    // plugin name.
    std::string label() const;
};

// Maps a built-in label to its kind; empty for unknown names ("stop" included).
std::optional<OpKind> builtin_from_label(std::string_view label);

// Per-condition style reference. The style image may be empty when the run
// was configured without one; operators that need it fail with OperatorError.
struct StyleContext {
    Image style_image;
    std::optional<SegMask> style_mask;
    std::optional<SegMask> content_mask;
    std::string condition_name;
};

// Raised when an operator cannot produce an output image. During evolution it
// marks the individual infeasible instead of aborting the run.
class OperatorError : public std::runtime_error {
public:
    explicit OperatorError(const std::string& msg, int exit_code = -1)
        : std::runtime_error(msg), exit_code_(exit_code) {}
    // Exit status of a failed external plugin, -1 otherwise.
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

// The six classical transforms. Factors are fixed: Blur sigma 2.0,
// Brighten x1.5, Darken x0.7, Contrast 1.5 around mean luminance, Sharpen
// unsharp masking with factor 2.0, Normalize 256-bin histogram matching to
// the style image.
Image apply_classical(const OperatorId& op, const Image& image, const StyleContext& ctx);

// Channel-wise statistics alignment in the perceptual space:
// out = sigma(y) * (x - mu(x)) / (sigma(x) + eps) + mu(y), eps = 1e-6.
Image apply_adain(const Image& image, const StyleContext& ctx);

// Class-wise variant of apply_adain guided by segmentation masks; content
// pixels whose class is absent from the style mask use global statistics.
Image apply_cacti(const Image& image, const StyleContext& ctx);

inline constexpr double kAdainEps = 1e-6;

} // namespace stylevo
