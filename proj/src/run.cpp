#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "osc/bounds.hpp"
#include "osc/config.hpp"
#include "osc/oscint.hpp"
#include "osc/rearrange.hpp"

#include <json.hpp>

namespace osc {

namespace {

using nlohmann::json;

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream os(path);
    os << j.dump(2) << "\n";
}

json validation_json(const ValidationReport& vr) {
    json arr = json::array();
    for (const auto& c : vr.checks)
        arr.push_back({{"check", c.check},
                       {"pass", c.pass},
                       {"worst", c.worst},
                       {"worst_at", c.worst_at}});
    return {{"checks", arr}, {"all_pass", vr.all_pass()}};
}

json route_json(const RouteResult& r) {
    return {{"applicable", r.applicable},
            {"pass", r.pass},
            {"worst", r.worst},
            {"worst_at", r.worst_at}};
}

json assumption_json(const AssumptionVerdict& v) {
    return {{"concavity", route_json(v.concavity)},
            {"radial", route_json(v.radial)},
            {"divergence", route_json(v.divergence)},
            {"overall_pass", v.overall_pass},
            {"routes_agree", v.routes_agree}};
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);

    auto wants = [&](const std::string& name) {
        return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
    };

    bool asserted_ok = true;
    bool numerical_failure = false;
    json summary;
    summary["phase"] = cfg.phase_name;

    try {
        BuiltPhase built = build_phase(cfg);
        summary["l"] = built.l;

        ValidationReport vr =
            built.radial ? validate_phase(*built.radial) : validate_phase(*built.grid);
        write_json_file(out / "validation.json", validation_json(vr));
        if (!vr.usable(cfg.allow_nonsmooth)) {
            std::cerr << "run: phase failed validation; see validation.json\n";
            summary["status"] = 3;
            write_json_file(out / "summary.json", summary);
            return 3;
        }

        AmplitudeProfile amp;
        if (cfg.amplitude_name == "const")
            amp = make_constant_amplitude(cfg.amplitude_value, built.l);
        else if (cfg.amplitude_name == "linear")
            amp = make_linear_amplitude(built.l);
        else
            throw ConfigError("config: unknown amplitude name '" + cfg.amplitude_name + "'");

        if (wants("table")) {
            std::ofstream os(out / "table.csv");
            write_table_csv(os, built.table);
        }

        if (wants("assumption")) {
            AssumptionVerdict verdict =
                built.radial ? check_geometric_assumption(*built.radial, built.table)
                             : check_geometric_assumption(*built.grid, built.table);
            write_json_file(out / "assumption.json", assumption_json(verdict));
            summary["assumption_pass"] = verdict.overall_pass;
            if (cfg.assert_pass && !verdict.overall_pass) asserted_ok = false;
        }

        if (wants("symmetrization")) {
            RearrangedPhase r = build_rearrangement(built.table);
            double dev = check_equimeasurable(r, built.table);
            std::ofstream os(out / "rearrangement.csv");
            os << "epsilon,g\n";
            char buf[128];
            for (double eps : built.table.nodes) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", eps, r.g(eps));
                os << buf;
            }
            summary["equimeasurable_deviation"] = dev;
            double tol = cfg.tol_or("equimeasurable",
                                    built.table.exact() ? 1e-9 * built.table.t(built.l)
                                                        : built.table.err_bound);
            if (cfg.assert_pass && dev > tol) asserted_ok = false;
        }

        std::vector<BoundReport> reports;
        if (wants("sweep") || wants("ledger") || wants("prop1")) {
            std::vector<double> lambdas;
            if (cfg.lambda_log) {
                lambdas = log_lambda_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_count);
            } else {
                for (int i = 0; i < cfg.lambda_count; ++i)
                    lambdas.push_back(cfg.lambda_count == 1
                                          ? cfg.lambda_min
                                          : cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) *
                                                                 i / (cfg.lambda_count - 1.0));
            }
            reports = verify_bound_sweep(built.table, amp, lambdas, wants("ledger"), cfg.jobs);
            {
                std::ofstream os(out / "sweep.csv");
                write_sweep_csv(os, reports);
            }
            {
                std::ofstream os(out / "sweep.json");
                write_reports_json(os, reports);
            }

            int errored = 0;
            double ratio_tol = 1.0 + cfg.tol_or("ratio", 1e-6);
            double worst_ratio = 0.0, worst_margin = 0.0;
            for (const auto& r : reports) {
                if (!r.error.empty()) {
                    ++errored;
                    continue;
                }
                if (!r.in_range) continue;
                worst_ratio = std::max(worst_ratio, r.ratio);
                if (cfg.assert_pass && r.ratio > ratio_tol) asserted_ok = false;
                for (const auto& e : r.ledger) {
                    double scale = std::max(std::abs(e.lhs), std::abs(e.rhs));
                    double margin_tol = cfg.tol_or("ledger_margin", 1e-8) * scale;
                    worst_margin = std::min(worst_margin, e.margin);
                    if (cfg.assert_pass && e.margin < -margin_tol) asserted_ok = false;
                }
            }
            summary["sweep_points"] = reports.size();
            summary["sweep_errors"] = errored;
            summary["worst_ratio"] = worst_ratio;
            if (wants("ledger")) summary["worst_ledger_margin"] = worst_margin;
            if (errored == static_cast<int>(reports.size())) numerical_failure = true;
        }

        if (wants("prop1")) {
            DecayFit fit = fit_decay_exponent(reports);
            std::vector<double> c_grid, eps_grid;
            for (int i = 0; i <= 20; ++i) c_grid.push_back(built.l * i / 20.0);
            for (int i = 0; i < 20; ++i)
                eps_grid.push_back(built.l * std::pow(10.0, -4.0 + 4.0 * i / 19.0));
            Prop1Report p1 = proposition1_check(built.table, fit.delta, fit.A, c_grid, eps_grid);
            write_json_file(out / "prop1.json", {{"delta", p1.delta},
                                                 {"A", p1.A},
                                                 {"worst_C", p1.worst_C},
                                                 {"worst_c", p1.worst_c},
                                                 {"worst_eps", p1.worst_eps}});
            summary["delta"] = p1.delta;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        std::cerr << "run: numerical failure: " << e.what() << "\n";
        numerical_failure = true;
    }

    int status = !asserted_ok ? 1 : (numerical_failure ? 3 : 0);
    summary["status"] = status;
    write_json_file(out / "summary.json", summary);
    return status;
}

}  // namespace osc
