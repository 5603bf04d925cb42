#include "stylevo/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "stylevo/evolve.hpp"
#include "stylevo/pnm.hpp"

namespace stylevo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<fs::path> list_files(const std::string& dir, const char* extension) {
    if (!fs::is_directory(dir))
        throw std::invalid_argument(dir + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == extension)
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

OperatorId parse_operator_name(const std::string& name, const PluginTable& plugins) {
    if (name == "stop")
        throw std::invalid_argument("the terminal node `stop` is implicit in a pipeline");
    if (const auto kind = builtin_from_label(name)) return OperatorId::builtin(*kind);
    if (plugins.count(name)) return OperatorId::external(name);
    throw std::invalid_argument("unknown operator `" + name + "`");
}

} // namespace

Pipeline parse_pipeline(const std::string& text, const PluginTable& plugins) {
    Pipeline p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        p.steps.push_back(parse_operator_name(item.substr(b, e - b + 1), plugins));
    }
    for (std::size_t i = 0; i < p.steps.size(); ++i)
        for (std::size_t j = i + 1; j < p.steps.size(); ++j)
            if (p.steps[i] == p.steps[j])
                throw std::invalid_argument("operator `" + p.steps[i].label() +
                                            "` appears twice; pipelines apply each operator once");
    return p;
}

namespace {

// Materializes the file-level configuration into an executable run setup.
RunConfig build_run_config(const OptimizeConfig& cfg) {
    RunConfig rc;
    rc.seed = cfg.seed;
    rc.population_size = cfg.population_size;
    rc.offspring_size = cfg.offspring_size;
    rc.generations = cfg.generations;
    rc.pyramid_levels = cfg.pyramid_levels;
    rc.plugins = cfg.plugins;
    for (const std::string& name : cfg.operators)
        rc.operator_set.push_back(parse_operator_name(name, cfg.plugins));

    for (std::size_t i = 0; i < cfg.content.size(); ++i) {
        EvalSample sample;
        sample.content = read_image(cfg.content[i]);
        sample.ctx.style_image = read_image(cfg.styles[i]);
        sample.ctx.condition_name = fs::path(cfg.styles[i]).stem().string();
        if (!cfg.masks.empty()) sample.ctx.content_mask = read_mask(cfg.masks[i]);
        if (!cfg.style_masks.empty()) sample.ctx.style_mask = read_mask(cfg.style_masks[i]);
        if (cfg.resolution_w > 0) {
            sample.content = resize_bilinear(sample.content, cfg.resolution_w, cfg.resolution_h);
            sample.ctx.style_image =
                resize_bilinear(sample.ctx.style_image, cfg.resolution_w, cfg.resolution_h);
            if (sample.ctx.content_mask)
                sample.ctx.content_mask =
                    resize_nearest(*sample.ctx.content_mask, cfg.resolution_w, cfg.resolution_h);
            if (sample.ctx.style_mask)
                sample.ctx.style_mask =
                    resize_nearest(*sample.ctx.style_mask, cfg.resolution_w, cfg.resolution_h);
        }
        rc.samples.push_back(std::move(sample));
    }
    return rc;
}

json front_to_json(const std::vector<Individual>& front) {
    // Internal-consistency guard: exported solutions must be mutually
    // non-dominated.
    for (std::size_t i = 0; i < front.size(); ++i)
        for (std::size_t j = 0; j < front.size(); ++j)
            if (i != j && dominates(*front[i].objectives, *front[j].objectives))
                throw std::logic_error("front export violates non-domination");

    json solutions = json::array();
    for (const Individual& ind : front) {
        solutions.push_back({
            {"pipeline", pipeline_string(decode(ind.genome))},
            {"content_distance", ind.objectives->content_distance},
            {"style_distance", ind.objectives->style_distance},
            {"selected", false},
        });
    }
    return json{{"solutions", solutions}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string generations_csv(const std::vector<GenerationRecord>& records) {
    std::string csv = "generation,pipeline,dists,style,rank\n";
    for (const GenerationRecord& rec : records) {
        for (const GenerationEntry& e : rec.entries) {
            csv += std::to_string(rec.generation);
            csv += ",\"" + e.pipeline + "\",";
            csv += fmt(e.content_distance);
            csv += ",";
            csv += fmt(e.style_distance);
            csv += ",";
            csv += std::to_string(e.rank);
            csv += "\n";
        }
    }
    return csv;
}

json run_meta(const OptimizeConfig& cfg) {
    json plugins = json::object();
    for (const auto& [name, spec] : cfg.plugins)
        plugins[name] = {{"executable", spec.executable},
                         {"timeout_seconds", spec.timeout_seconds}};
    json meta{
        {"seed", cfg.seed},
        {"population_size", cfg.population_size},
        {"offspring_size", cfg.offspring_size},
        {"generations", cfg.generations},
        {"operators", cfg.operators},
        {"content", cfg.content},
        {"styles", cfg.styles},
        {"masks", cfg.masks},
        {"style_masks", cfg.style_masks},
        {"pyramid_levels", cfg.pyramid_levels},
        {"out_dir", cfg.out_dir},
        {"plugins", plugins},
        {"pairing", "content[i] is evaluated against styles[i]"},
        {"normalize_reference", "condition style image"},
        {"metric_parameters",
         {{"structure_texture_eps", kMetricEps},
          {"adain_eps", kAdainEps},
          {"dists_level_weights", "uniform"},
          {"style_histogram_bins", 16}}},
        {"defaulted_keys", cfg.defaulted},
    };
    if (cfg.resolution_w > 0)
        meta["resolution"] = std::to_string(cfg.resolution_w) + "x" +
                             std::to_string(cfg.resolution_h);
    else
        meta["resolution"] = "native";
    return meta;
}

} // namespace

int cmd_optimize(const std::string& config_path, int threads) {
    set_threads(threads);
    OptimizeConfig cfg;
    try {
        cfg = load_optimize_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
        return 2;
    }

    RunConfig rc;
    try {
        rc = build_run_config(cfg);
        validate(rc);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        const RunResult result = run(rc);
        fs::create_directories(cfg.out_dir);
        write_text(fs::path(cfg.out_dir) / "front.json", front_to_json(result.front).dump(2) + "\n");
        write_text(fs::path(cfg.out_dir) / "generations.csv", generations_csv(result.records));
        write_text(fs::path(cfg.out_dir) / "run_meta.json", run_meta(cfg).dump(2) + "\n");
        std::cout << "front: " << result.front.size() << " solutions, "
                  << result.records.size() << " generation records -> " << cfg.out_dir << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_apply(const ApplyArgs& args) {
    set_threads(args.threads);

    PluginTable plugins;
    for (const std::string& spec : args.plugin_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            std::cerr << "error: --plugin expects name=/path/to/executable, got `" << spec
                      << "`\n";
            return 2;
        }
        plugins[spec.substr(0, eq)].executable = spec.substr(eq + 1);
    }

    Pipeline pipeline;
    StyleContext ctx;
    std::vector<fs::path> files;
    try {
        pipeline = parse_pipeline(args.pipeline, plugins);
        files = list_files(args.content_dir, ".ppm");
        if (!args.style_path.empty()) ctx.style_image = read_image(args.style_path);
        if (!args.style_mask_path.empty()) ctx.style_mask = read_mask(args.style_mask_path);
        if (!args.mask_dir.empty() && !fs::is_directory(args.mask_dir))
            throw std::invalid_argument(args.mask_dir + " is not a directory");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << args.out_dir << ": " << ec.message() << "\n";
        return 1;
    }

    std::vector<std::string> failures(files.size());
    const std::int64_t n = static_cast<std::int64_t>(files.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const fs::path& file = files[static_cast<std::size_t>(i)];
        try {
            Image img = read_image(file.string());
            StyleContext file_ctx = ctx;
            if (!args.mask_dir.empty()) {
                const fs::path mask = fs::path(args.mask_dir) / (file.stem().string() + ".pgm");
                if (fs::exists(mask)) file_ctx.content_mask = read_mask(mask.string());
            }
            for (const OperatorId& op : pipeline.steps)
                img = apply_operator(op, img, file_ctx, plugins);
            write_image(img, (fs::path(args.out_dir) / file.filename()).string());
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = file.filename().string() + ": " + e.what();
        }
    }

    std::size_t failed = 0;
    for (const std::string& f : failures) {
        if (f.empty()) continue;
        std::cerr << "failed: " << f << "\n";
        ++failed;
    }
    std::cout << (files.size() - failed) << "/" << files.size() << " images written to "
              << args.out_dir << "\n";
    return failed == 0 ? 0 : 1;
}

int cmd_eval_pair(const EvalPairArgs& args) {
    const bool style_mode = !args.style_path.empty();
    if (style_mode == !args.dir_b.empty()) {
        std::cerr << "error: eval-pair needs either a second directory or --style\n";
        return 2;
    }

    std::vector<fs::path> files;
    Image style;
    try {
        files = list_files(args.dir_a, ".ppm");
        if (files.empty()) throw std::invalid_argument("no .ppm files in " + args.dir_a);
        if (style_mode) style = read_image(args.style_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::ostringstream csv;
    try {
        if (style_mode) {
            csv << "file,style\n";
            double sum = 0.0;
            for (const fs::path& file : files) {
                const double d = style_distance(read_image(file.string()), style);
                sum += d;
                csv << file.filename().string() << "," << fmt(d) << "\n";
            }
            csv << "mean," << fmt(sum / static_cast<double>(files.size())) << "\n";
        } else {
            csv << "file,dists,style\n";
            double dists_sum = 0.0;
            double style_sum = 0.0;
            for (const fs::path& file : files) {
                const fs::path other = fs::path(args.dir_b) / file.filename();
                if (!fs::exists(other))
                    throw std::runtime_error("missing counterpart for " +
                                             file.filename().string() + " in " + args.dir_b);
                const Image a = read_image(file.string());
                const Image b = read_image(other.string());
                const double dd = dists(a, b, args.pyramid_levels);
                const double sd = style_distance(a, b);
                dists_sum += dd;
                style_sum += sd;
                csv << file.filename().string() << "," << fmt(dd) << "," << fmt(sd) << "\n";
            }
            const double n = static_cast<double>(files.size());
            csv << "mean," << fmt(dists_sum / n) << "," << fmt(style_sum / n) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::cout << csv.str();
    if (!args.out_csv.empty()) {
        try {
            write_text(args.out_csv, csv.str());
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_eval_dist(const EvalDistArgs& args) {
    std::vector<fs::path> files_a;
    std::vector<fs::path> files_b;
    double fixed_bandwidth = 0.0; // 0 = median heuristic
    try {
        files_a = list_files(args.dir_a, ".ppm");
        files_b = list_files(args.dir_b, ".ppm");
        if (files_a.size() < 2 || files_b.size() < 2)
            throw std::invalid_argument("eval-dist needs at least 2 images per directory");
        if (args.bandwidth != "median") {
            fixed_bandwidth = std::stod(args.bandwidth);
            if (!(fixed_bandwidth > 0.0))
                throw std::invalid_argument("bandwidth must be positive");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto embed_dir = [](const std::vector<fs::path>& files) {
            std::vector<std::vector<double>> rows(files.size());
            const std::int64_t n = static_cast<std::int64_t>(files.size());
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < n; ++i)
                rows[static_cast<std::size_t>(i)] =
                    embed(read_image(files[static_cast<std::size_t>(i)].string()));
            EmbeddingSet set;
            for (const auto& row : rows) set.append(row);
            return set;
        };
        const EmbeddingSet ea = embed_dir(files_a);
        const EmbeddingSet eb = embed_dir(files_b);

        double bandwidth = fixed_bandwidth;
        const double mmd = fixed_bandwidth > 0.0 ? mmd_rbf(ea, eb, fixed_bandwidth)
                                                 : mmd_rbf_median(ea, eb, &bandwidth);
        std::cout << "frechet_distance," << fmt(frechet_distance(ea, eb)) << "\n";
        std::cout << "mmd_rbf," << fmt(mmd) << "\n";
        std::cout << "bandwidth," << fmt(bandwidth) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace stylevo
