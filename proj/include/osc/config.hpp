#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "osc/profiles.hpp"
#include "osc/sublevel.hpp"

namespace osc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key-value config with [section] headers and '#' comments.
// Sections: [phase], [amplitude], [lambda], [run].
struct ExperimentConfig {
    std::string phase_name = "power";
    std::map<std::string, std::string> phase_params;
    bool allow_nonsmooth = false;

    std::string amplitude_name = "const";
    double amplitude_value = 1.0;

    double lambda_min = 10.0;
    double lambda_max = 1e4;
    int lambda_count = 25;
    bool lambda_log = true;

    std::vector<std::string> checks = {"assumption", "table", "sweep"};
    std::string out_dir = "out";
    int jobs = 1;
    bool assert_pass = false;
    std::map<std::string, double> tol;

    double l_override = 0.0;  // 0: use choose_l
    int table_K = 0;          // 0: builder default

    double tol_or(const std::string& key, double fallback) const {
        auto it = tol.find(key);
        return it == tol.end() ? fallback : it->second;
    }
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// The phase named by the config, either radial or a 2D grid.
struct BuiltPhase {
    std::optional<RadialProfile> radial;
    std::optional<GridPhase2D> grid;
    double l = 0.0;
    SublevelTable table;
};

BuiltPhase build_phase(const ExperimentConfig& cfg);

// Orchestrates the configured checks in dependency order, writing CSV/JSON
// under cfg.out_dir. Returns a process exit status: 0 ok, 1 asserted
// invariant failed, 3 numerical failure (partial outputs preserved).
int run_experiment(const ExperimentConfig& cfg);

}  // namespace osc
