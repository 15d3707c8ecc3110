#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace dwring::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ConfigError(fmt::format("{}: unknown field '{}'", where, key));
    }
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(fmt::format("{}: field '{}' is missing or has the wrong type", where, key));
    }
}

std::string axis_name(const std::string& pointer) {
    const auto slash = pointer.find_last_of('/');
    return slash == std::string::npos ? pointer : pointer.substr(slash + 1);
}

GridAxis parse_axis(const json& j) {
    reject_unknown(j, {"parameter", "name", "start", "stop", "points", "endpoint", "values"}, "grid");
    GridAxis axis;
    axis.pointer = field<std::string>(j, "parameter", "grid");
    if (axis.pointer.empty() || axis.pointer.front() != '/') {
        throw ConfigError(fmt::format("grid: parameter '{}' must be a JSON pointer starting with '/'", axis.pointer));
    }
    axis.name = j.contains("name") ? field<std::string>(j, "name", "grid") : axis_name(axis.pointer);
    if (j.contains("values")) {
        if (j.contains("start") || j.contains("stop") || j.contains("points")) {
            throw ConfigError("grid: give either 'values' or 'start'/'stop'/'points'");
        }
        axis.values = field<std::vector<double>>(j, "values", "grid");
        if (axis.values.empty()) throw ConfigError("grid: 'values' is empty");
        return axis;
    }
    const int points = field<int>(j, "points", "grid");
    if (points < 1) throw ConfigError("grid: points must be >= 1");
    const bool endpoint = j.contains("endpoint") ? field<bool>(j, "endpoint", "grid") : true;
    axis.values = grid_values(field<double>(j, "start", "grid"), field<double>(j, "stop", "grid"), points, endpoint);
    return axis;
}

json resolve_input(const json& input, const std::filesystem::path& base_dir) {
    if (input.is_object()) return input;
    if (input.is_string()) {
        std::filesystem::path p = input.get<std::string>();
        if (p.empty()) throw ConfigError("input path is empty");
        if (p.is_relative()) p = base_dir / p;
        try {
            return json::parse(read_text_file(p));
        } catch (const json::parse_error& e) {
            throw ConfigError(fmt::format("input {} is not valid JSON: {}", p.string(), e.what()));
        }
    }
    throw ConfigError("'input' must be an object or a path");
}

}  // namespace

std::string to_string(Command command) {
    switch (command) {
        case Command::profile: return "profile";
        case Command::spectrum: return "spectrum";
        case Command::effective_exchange: return "effective-exchange";
        case Command::composite: return "composite";
    }
    return "unknown";
}

Command command_from_string(const std::string& name) {
    if (name == "profile") return Command::profile;
    if (name == "spectrum") return Command::spectrum;
    if (name == "effective-exchange") return Command::effective_exchange;
    if (name == "composite") return Command::composite;
    throw ConfigError(fmt::format("unknown command '{}'", name));
}

std::vector<double> grid_values(double start, double stop, int points, bool endpoint) {
    std::vector<double> values;
    if (points == 1) return {start};
    const double divisions = endpoint ? points - 1 : points;
    for (int i = 0; i < points; ++i) values.push_back(start + (stop - start) * (i / divisions));
    return values;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot read {}", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json RunConfig::echo() const {
    json grid_json = json::array();
    for (const auto& axis : grid) {
        grid_json.push_back(json{{"name", axis.name}, {"parameter", axis.pointer}, {"values", axis.values}});
    }
    return json{
        {"schema", 1},
        {"command", to_string(command)},
        {"input", input},
        {"grid", grid_json},
        {"options", options},
        {"tolerances",
         {{"lanczos_tol", tolerances.lanczos_tol},
          {"lanczos_max_iter", tolerances.lanczos_max_iter},
          {"degeneracy_rel_tol", tolerances.degeneracy_rel_tol},
          {"validity_threshold", tolerances.validity_threshold},
          {"level_merge_rel", tolerances.level_merge_rel}}},
        {"format", format},
        {"seed", seed},
    };
}

RunConfig parse_config(const json& document, const std::filesystem::path& base_dir) {
    reject_unknown(document,
                   {"schema", "command", "input", "grid", "options", "tolerances", "output", "format", "seed",
                    "threads"},
                   "config");
    if (!document.contains("schema") || document.at("schema") != 1) {
        throw ConfigError("config: \"schema\": 1 is required");
    }
    RunConfig config;
    config.command = command_from_string(field<std::string>(document, "command", "config"));
    if (!document.contains("input")) throw ConfigError("config: missing field 'input'");
    config.input = resolve_input(document.at("input"), base_dir);

    if (document.contains("grid")) {
        const json& g = document.at("grid");
        if (g.is_array()) {
            for (const auto& axis : g) config.grid.push_back(parse_axis(axis));
        } else {
            config.grid.push_back(parse_axis(g));
        }
        if (config.grid.size() > 2) throw ConfigError("grid: at most two axes are supported");
    }
    if (document.contains("options")) {
        config.options = document.at("options");
        if (!config.options.is_object()) throw ConfigError("options: expected an object");
    }
    if (document.contains("tolerances")) {
        const json& t = document.at("tolerances");
        reject_unknown(t, {"lanczos_tol", "lanczos_max_iter", "degeneracy_rel_tol", "validity_threshold",
                           "level_merge_rel"},
                       "tolerances");
        auto& tol = config.tolerances;
        if (t.contains("lanczos_tol")) tol.lanczos_tol = field<double>(t, "lanczos_tol", "tolerances");
        if (t.contains("lanczos_max_iter")) tol.lanczos_max_iter = field<int>(t, "lanczos_max_iter", "tolerances");
        if (t.contains("degeneracy_rel_tol")) {
            tol.degeneracy_rel_tol = field<double>(t, "degeneracy_rel_tol", "tolerances");
        }
        if (t.contains("validity_threshold")) {
            tol.validity_threshold = field<double>(t, "validity_threshold", "tolerances");
        }
        if (t.contains("level_merge_rel")) tol.level_merge_rel = field<double>(t, "level_merge_rel", "tolerances");
        if (!(tol.lanczos_tol > 0.0) || tol.lanczos_max_iter < 1 || !(tol.degeneracy_rel_tol >= 0.0) ||
            !(tol.level_merge_rel >= 0.0)) {
            throw ConfigError("tolerances: values must be positive");
        }
    }
    if (document.contains("output")) {
        config.output = field<std::string>(document, "output", "config");
        if (config.output.empty()) throw ConfigError("config: 'output' is empty");
        if (std::filesystem::path(config.output).is_relative()) config.output = (base_dir / config.output).string();
    }
    if (document.contains("format")) config.format = field<std::string>(document, "format", "config");
    if (config.format != "csv" && config.format != "json") {
        throw ConfigError(fmt::format("config: format '{}' is not csv or json", config.format));
    }
    if (document.contains("seed")) config.seed = field<std::uint64_t>(document, "seed", "config");
    if (document.contains("threads")) config.threads = field<int>(document, "threads", "config");
    if (config.threads < 1) throw ConfigError("config: threads must be >= 1");
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{} is not valid JSON: {}", path.string(), e.what()));
    }
    return parse_config(document, path.parent_path());
}

}  // namespace dwring::cli
