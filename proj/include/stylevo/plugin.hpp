#pragma once

#include <map>
#include <string>

#include "stylevo/image.hpp"
#include "stylevo/operators.hpp"

namespace stylevo {

struct PluginSpec {
    std::string executable;
    double timeout_seconds = 120.0;
};

// Ordered by name so serialized run metadata is stable.
using PluginTable = std::map<std::string, PluginSpec>;

// Directory for plugin scratch files: $STYLEVO_TMPDIR, else $TMPDIR, else /tmp.
std::string temp_root();

// Runs the plugin executable out of process:
//   exe --content <ppm> --style <ppm> --mask <pgm|"none"> --style-mask <pgm|"none"> --out <ppm>
// Success is exit code 0 plus a valid P6 at --out whose dimensions equal the
// input's. Everything else (nonzero exit, timeout, missing or malformed
// output, dimension mismatch) raises OperatorError. Each invocation uses a
// private scratch directory, so concurrent calls do not interfere.
Image apply_external(const std::string& name, const Image& image, const StyleContext& ctx,
                     const PluginSpec& spec);

// Full dispatch over the operator set; Stop is rejected (it is never applied).
Image apply_operator(const OperatorId& op, const Image& image, const StyleContext& ctx,
                     const PluginTable& plugins);

} // namespace stylevo
