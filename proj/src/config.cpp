#include "stylevo/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace stylevo {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

long long parse_int(const std::string& v, int line, const std::string& key) {
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(line, "key `" + key + "` expects an integer, got `" + v + "`");
    return out;
}

double parse_real(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError(line, "key `" + key + "` expects a number, got `" + v + "`");
    }
}

void parse_resolution(const std::string& v, int line, OptimizeConfig& cfg) {
    const auto x = v.find('x');
    if (x == std::string::npos) {
        const long long side = parse_int(v, line, "resolution");
        cfg.resolution_w = cfg.resolution_h = static_cast<int>(side);
    } else {
        cfg.resolution_w = static_cast<int>(parse_int(v.substr(0, x), line, "resolution"));
        cfg.resolution_h = static_cast<int>(parse_int(v.substr(x + 1), line, "resolution"));
    }
    if (cfg.resolution_w < 1 || cfg.resolution_h < 1)
        throw ConfigError(line, "resolution must be positive, got `" + v + "`");
}

} // namespace

OptimizeConfig parse_optimize_config(const std::string& text) {
    OptimizeConfig cfg;
    std::set<std::string> seen;

    std::stringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string stripped = trim(raw);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected `key = value`, got `" + stripped + "`");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key");
        if (!seen.insert(key).second) throw ConfigError(line, "duplicate key `" + key + "`");

        if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(value, line, key));
        } else if (key == "population_size") {
            cfg.population_size = static_cast<int>(parse_int(value, line, key));
        } else if (key == "offspring_size") {
            cfg.offspring_size = static_cast<int>(parse_int(value, line, key));
        } else if (key == "generations") {
            cfg.generations = static_cast<int>(parse_int(value, line, key));
        } else if (key == "operators") {
            cfg.operators = split_list(value);
        } else if (key == "content") {
            cfg.content = split_list(value);
        } else if (key == "styles") {
            cfg.styles = split_list(value);
        } else if (key == "masks") {
            cfg.masks = split_list(value);
        } else if (key == "style_masks") {
            cfg.style_masks = split_list(value);
        } else if (key == "pyramid_levels") {
            cfg.pyramid_levels = static_cast<int>(parse_int(value, line, key));
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "resolution") {
            parse_resolution(value, line, cfg);
        } else if (key.rfind("plugin.", 0) == 0) {
            std::string rest = key.substr(7);
            const bool timeout = rest.size() > 8 && rest.rfind(".timeout") == rest.size() - 8;
            if (timeout) rest = rest.substr(0, rest.size() - 8);
            if (rest.empty() || rest.find('.') != std::string::npos)
                throw ConfigError(line, "unknown key `" + key + "`");
            if (timeout)
                cfg.plugins[rest].timeout_seconds = parse_real(value, line, key);
            else
                cfg.plugins[rest].executable = value;
        } else {
            throw ConfigError(line, "unknown key `" + key + "`");
        }
    }

    for (const char* key : {"seed", "population_size", "offspring_size", "generations",
                            "operators", "masks", "style_masks", "pyramid_levels", "out_dir",
                            "resolution"})
        if (!seen.count(key)) cfg.defaulted.insert(key);

    if (cfg.content.empty()) throw ConfigError(0, "key `content` is required");
    if (cfg.styles.empty()) throw ConfigError(0, "key `styles` is required");
    if (cfg.styles.size() != cfg.content.size())
        throw ConfigError(0, "`styles` must list one reference per content image (" +
                                 std::to_string(cfg.content.size()) + " needed, " +
                                 std::to_string(cfg.styles.size()) + " given)");
    if (!cfg.masks.empty() && cfg.masks.size() != cfg.content.size())
        throw ConfigError(0, "`masks` must align with `content`");
    if (!cfg.style_masks.empty() && cfg.style_masks.size() != cfg.styles.size())
        throw ConfigError(0, "`style_masks` must align with `styles`");
    for (const auto& [name, spec] : cfg.plugins)
        if (spec.executable.empty())
            throw ConfigError(0, "plugin `" + name + "` has a timeout but no executable");

    if (cfg.operators.empty()) {
        cfg.operators = {"normalize", "blur", "brighten", "darken", "contrast", "sharpen",
                         "adain"};
        cfg.defaulted.insert("operators");
    }
    return cfg;
}

OptimizeConfig load_optimize_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_optimize_config(buf.str());
}

} // namespace stylevo
