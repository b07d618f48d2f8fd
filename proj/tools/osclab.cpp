#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "osc/bounds.hpp"
#include "osc/config.hpp"
#include "osc/oscint.hpp"

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    std::vector<std::string> tol_overrides;
    bool assert_pass = false;
};

void add_common_flags(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--config", g.config_path, "experiment config file");
    cmd->add_option("--out", g.out_dir, "output directory");
    cmd->add_option("--jobs", g.jobs, "worker pool size for sweeps");
    cmd->add_option("--tol", g.tol_overrides, "tolerance override KEY=VAL (repeatable)");
    cmd->add_flag("--assert-pass", g.assert_pass,
                  "exit 1 unless every checked invariant holds");
}

osc::ExperimentConfig load_config(const GlobalOpts& g) {
    osc::ExperimentConfig cfg;
    if (!g.config_path.empty()) cfg = osc::parse_config_file(g.config_path);
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    if (g.jobs > 0) cfg.jobs = g.jobs;
    if (g.assert_pass) cfg.assert_pass = true;
    for (const auto& kv : g.tol_overrides) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw osc::ConfigError("--tol expects KEY=VAL, got '" + kv + "'");
        try {
            cfg.tol[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const osc::ConfigError&) {
            throw;
        } catch (...) {
            throw osc::ConfigError("--tol value in '" + kv + "' is not a number");
        }
    }
    return cfg;
}

int run_with_checks(const GlobalOpts& g, std::vector<std::string> checks) {
    osc::ExperimentConfig cfg = load_config(g);
    cfg.checks = std::move(checks);
    return osc::run_experiment(cfg);
}

int run_oscint(const GlobalOpts& g, double lambda) {
    osc::ExperimentConfig cfg = load_config(g);
    osc::BuiltPhase built = osc::build_phase(cfg);
    osc::AmplitudeProfile amp;
    if (cfg.amplitude_name == "const")
        amp = osc::make_constant_amplitude(cfg.amplitude_value, built.l);
    else if (cfg.amplitude_name == "linear")
        amp = osc::make_linear_amplitude(built.l);
    else
        throw osc::ConfigError("config: unknown amplitude name '" + cfg.amplitude_name + "'");
    osc::OscResult res = osc::oscint_coarea(built.table, amp, lambda);
    std::printf("lambda,re,im,abs,err,route\n");
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,coarea\n", lambda, res.value.real(),
                res.value.imag(), std::abs(res.value), res.err_estimate);
    return 0;
}

int run_catalog(bool as_json) {
    const auto& entries = osc::phase_catalog();
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : entries)
            arr.push_back({{"name", e.name},
                           {"parameters", e.parameter_schema},
                           {"expected_verdict", e.expected_verdict}});
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& e : entries)
            std::cout << e.name << "\n  parameters: " << e.parameter_schema
                      << "\n  expected verdict: " << e.expected_verdict << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for oscillatory-integral decay bounds"};
    app.require_subcommand(1);

    GlobalOpts g;
    double lambda = 10.0;
    bool catalog_json = false;

    auto* check = app.add_subcommand("check", "geometric-assumption verdict for a phase");
    auto* table = app.add_subcommand("table", "emit the sublevel measure table as CSV");
    auto* symmetrize = app.add_subcommand("symmetrize", "rearrangement + equimeasurability check");
    auto* oscint = app.add_subcommand("oscint", "evaluate I(lambda) at a single frequency");
    auto* sweep = app.add_subcommand("sweep", "bound verification over a lambda grid");
    auto* ledger = app.add_subcommand("ledger", "sweep with the per-lambda proof ledger");
    auto* prop1 = app.add_subcommand("prop1", "decay fit and sublevel band constants");
    auto* catalog = app.add_subcommand("catalog", "list the built-in phase families");

    for (auto* cmd : {check, table, symmetrize, oscint, sweep, ledger, prop1})
        add_common_flags(cmd, g);
    oscint->add_option("--lambda", lambda, "frequency")->required();
    catalog->add_flag("--json", catalog_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_with_checks(g, {"assumption"});
        if (table->parsed()) return run_with_checks(g, {"table"});
        if (symmetrize->parsed()) return run_with_checks(g, {"symmetrization"});
        if (oscint->parsed()) return run_oscint(g, lambda);
        if (sweep->parsed()) return run_with_checks(g, {"table", "sweep"});
        if (ledger->parsed()) return run_with_checks(g, {"sweep", "ledger"});
        if (prop1->parsed()) return run_with_checks(g, {"sweep", "prop1"});
        if (catalog->parsed()) return run_catalog(catalog_json);
    } catch (const osc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
