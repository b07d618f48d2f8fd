#include "osc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace osc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    double d = to_double(key, v);
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> split_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        std::string qual = section + "." + key;

        if (section == "phase") {
            if (key == "name") cfg.phase_name = val;
            else if (key == "allow_nonsmooth") cfg.allow_nonsmooth = to_bool(qual, val);
            else if (key == "l") cfg.l_override = to_double(qual, val);
            else if (key == "K") cfg.table_K = to_int(qual, val);
            else cfg.phase_params[key] = val;
        } else if (section == "amplitude") {
            if (key == "name") cfg.amplitude_name = val;
            else if (key == "value") cfg.amplitude_value = to_double(qual, val);
            else throw ConfigError("config: unknown key '" + qual + "'");
        } else if (section == "lambda") {
            if (key == "min") cfg.lambda_min = to_double(qual, val);
            else if (key == "max") cfg.lambda_max = to_double(qual, val);
            else if (key == "count") cfg.lambda_count = to_int(qual, val);
            else if (key == "spacing") {
                if (val == "log") cfg.lambda_log = true;
                else if (val == "linear") cfg.lambda_log = false;
                else throw ConfigError("config: lambda.spacing must be 'log' or 'linear'");
            } else throw ConfigError("config: unknown key '" + qual + "'");
        } else if (section == "run") {
            if (key == "checks") cfg.checks = split_list(val);
            else if (key == "out") cfg.out_dir = val;
            else if (key == "jobs") cfg.jobs = to_int(qual, val);
            else if (key == "assert_pass") cfg.assert_pass = to_bool(qual, val);
            else throw ConfigError("config: unknown key '" + qual + "'");
        } else {
            throw ConfigError("config: unknown section '" + section + "'");
        }
    }
    if (!(cfg.lambda_min > 0.0))
        throw ConfigError("config: lambda.min must be positive");
    if (cfg.lambda_count < 1)
        throw ConfigError("config: lambda.count must be >= 1");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

BuiltPhase build_phase(const ExperimentConfig& cfg) {
    auto param = [&](const std::string& key, double fallback) {
        auto it = cfg.phase_params.find(key);
        return it == cfg.phase_params.end() ? fallback : to_double("phase." + key, it->second);
    };

    BuiltPhase built;
    if (cfg.phase_name == "power") {
        built.radial = make_power_profile(param("m", 2.0), param("R", 1.0),
                                          static_cast<int>(param("n", 2.0)));
    } else if (cfg.phase_name == "flat") {
        built.radial = make_flat_profile(param("R", 0.45), static_cast<int>(param("n", 2.0)));
    } else if (cfg.phase_name == "staircase") {
        std::vector<double> slopes{1.0, 8.0}, breakpoints{0.5};
        if (auto it = cfg.phase_params.find("slopes"); it != cfg.phase_params.end())
            slopes = split_doubles("phase.slopes", it->second);
        if (auto it = cfg.phase_params.find("breakpoints"); it != cfg.phase_params.end())
            breakpoints = split_doubles("phase.breakpoints", it->second);
        built.radial = make_staircase_profile(slopes, breakpoints, param("width", 0.05),
                                              param("R", 1.0), static_cast<int>(param("n", 2.0)));
    } else if (cfg.phase_name == "grid2d") {
        built.grid = make_quadratic_grid(param("cx", 1.0), param("cy", 2.0),
                                         param("half", 1.0), static_cast<int>(param("N", 401.0)));
    } else {
        throw ConfigError("config: unknown catalog phase name '" + cfg.phase_name + "'");
    }

    if (built.radial) {
        built.l = cfg.l_override > 0.0 ? cfg.l_override : choose_l(*built.radial);
        built.table = build_sublevel_table_radial(*built.radial, built.l,
                                                  cfg.table_K > 0 ? cfg.table_K : 512);
    } else {
        built.l = cfg.l_override > 0.0 ? cfg.l_override : choose_l(*built.grid);
        built.table = build_sublevel_table_grid(*built.grid, built.l,
                                                cfg.table_K > 0 ? cfg.table_K : 128);
    }
    return built;
}

}  // namespace osc
