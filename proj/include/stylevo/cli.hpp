#pragma once

#include <string>
#include <vector>

#include "stylevo/config.hpp"
#include "stylevo/genome.hpp"

namespace stylevo {

// Parses a comma-joined pipeline string ("adain,darken,cacti"; "" is the
// empty pipeline). Names must be built-in operators or registered plugins;
// "stop" is implicit and rejected. Throws std::invalid_argument naming the
// offending operator.
Pipeline parse_pipeline(const std::string& text, const PluginTable& plugins);

// CLI entry points. Exit status 0 on success, 1 on runtime/I/O failures,
// 2 on configuration, usage or parse errors.
int cmd_optimize(const std::string& config_path, int threads);

struct ApplyArgs {
    std::string pipeline;
    std::string content_dir;
    std::string out_dir;
    std::string style_path;      // optional
    std::string mask_dir;        // optional; per-file "<stem>.pgm" masks
    std::string style_mask_path; // optional
    std::vector<std::string> plugin_specs; // "name=/path/to/exe"
    int threads = 0;
};
int cmd_apply(const ApplyArgs& args);

struct EvalPairArgs {
    std::string dir_a;
    std::string dir_b;      // empty when --style is used
    std::string style_path; // single style reference mode
    std::string out_csv;    // optional copy of the report
    int pyramid_levels = 4;
};
int cmd_eval_pair(const EvalPairArgs& args);

struct EvalDistArgs {
    std::string dir_a;
    std::string dir_b;
    std::string bandwidth = "median"; // "median" or a positive number
};
int cmd_eval_dist(const EvalDistArgs& args);

} // namespace stylevo
