#include <string>

#include <CLI11.hpp>

#include "stylevo/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Evolves image-transformation pipelines with a multi-objective genetic "
                 "algorithm and evaluates the resulting datasets"};
    app.require_subcommand(1);

    std::string config_path;
    int threads = 0;
    auto* optimize = app.add_subcommand(
        "optimize", "Run the evolutionary search described by a config file");
    optimize->add_option("config", config_path, "key = value run configuration")->required();
    optimize->add_option("--threads", threads, "worker thread cap (results are identical)");

    stylevo::ApplyArgs apply_args;
    auto* apply = app.add_subcommand("apply", "Apply a pipeline to every .ppm in a directory");
    apply->add_option("pipeline", apply_args.pipeline,
                      "comma-joined operator names; \"\" is the identity")
        ->required();
    apply->add_option("content_dir", apply_args.content_dir, "input directory")->required();
    apply->add_option("out_dir", apply_args.out_dir, "output directory")->required();
    apply->add_option("--style", apply_args.style_path, "style reference image (P6)");
    apply->add_option("--mask-dir", apply_args.mask_dir,
                      "directory of per-file <stem>.pgm content masks");
    apply->add_option("--style-mask", apply_args.style_mask_path, "style mask (P5)");
    apply->add_option("--plugin", apply_args.plugin_specs,
                      "register an external operator: name=/path/to/executable");
    apply->add_option("--threads", apply_args.threads, "worker thread cap");

    stylevo::EvalPairArgs pair_args;
    auto* eval_pair =
        app.add_subcommand("eval-pair", "Paired-image metrics between matching filenames");
    eval_pair->add_option("dirA", pair_args.dir_a, "first directory")->required();
    eval_pair->add_option("dirB", pair_args.dir_b, "second directory (paired by filename)");
    eval_pair->add_option("--style", pair_args.style_path,
                          "style reference image instead of a second directory");
    eval_pair->add_option("--out", pair_args.out_csv, "also write the CSV report here");
    eval_pair->add_option("--levels", pair_args.pyramid_levels, "pyramid levels for dists");

    stylevo::EvalDistArgs dist_args;
    auto* eval_dist =
        app.add_subcommand("eval-dist", "Distributional metrics between two image sets");
    eval_dist->add_option("dirA", dist_args.dir_a, "first directory")->required();
    eval_dist->add_option("dirB", dist_args.dir_b, "second directory")->required();
    eval_dist->add_option("--bandwidth", dist_args.bandwidth,
                          "RBF bandwidth: a positive number or \"median\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (optimize->parsed()) return stylevo::cmd_optimize(config_path, threads);
    if (apply->parsed()) return stylevo::cmd_apply(apply_args);
    if (eval_pair->parsed()) return stylevo::cmd_eval_pair(pair_args);
    if (eval_dist->parsed()) return stylevo::cmd_eval_dist(dist_args);
    return 2;
}
