#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stylevo/plugin.hpp"

namespace stylevo {

// Error in a run configuration file; line is 0 when no line applies.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Parsed `key = value` run configuration. Unknown keys are rejected with the
// offending line number. Lists are comma-separated. `plugin.<name>` registers
// an external operator's executable and `plugin.<name>.timeout` overrides its
// timeout in seconds.
struct OptimizeConfig {
    std::uint64_t seed = 0;
    int population_size = 20;
    int offspring_size = 20;
    int generations = 20;
    std::vector<std::string> operators; // labels; defaults to the mask-free built-ins
    std::vector<std::string> content;
    std::vector<std::string> styles;
    std::vector<std::string> masks;       // content masks, aligned with content
    std::vector<std::string> style_masks; // aligned with styles
    int pyramid_levels = 4;
    std::string out_dir = "out";
    int resolution_w = 0; // 0 = native resolution
    int resolution_h = 0;
    PluginTable plugins;
    std::set<std::string> defaulted; // keys that fell back to their defaults
};

OptimizeConfig parse_optimize_config(const std::string& text);
OptimizeConfig load_optimize_config(const std::string& path);

} // namespace stylevo
