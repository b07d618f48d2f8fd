#include "osc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "osc/quadrature.hpp"

#include <json.hpp>

namespace osc {

namespace {

using cplx = std::complex<double>;

cplx unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

// int_{s_lo}^{s_hi} e^{i lambda s} a(s) J(s) ds, with the u = t(s)
// substitution on a head starting at s_lo = 0
cplx coarea_segment(const SublevelTable& tab, const AmplitudeProfile& amp,
                    double lambda, double s_lo, double s_hi) {
    const double alam = std::abs(lambda);
    cplx acc = 0.0;
    double s0 = s_lo;
    if (s_lo == 0.0) {
        double s_c = std::min(s_hi, 0.5 * M_PI / alam);
        acc += gl_panels_geometric(
                   [&](double u) {
                       double s = tab.t_inv(u);
                       return unit_phase(lambda * s) * amp.a(s);
                   },
                   tab.t(s_c), 45)
                   .value;
        s0 = s_c;
    }
    if (s0 < s_hi) {
        int n = static_cast<int>(std::ceil((s_hi - s0) * alam / (0.5 * M_PI)));
        n = std::max(n, 4);
        acc += gl_panels(
                   [&](double s) { return unit_phase(lambda * s) * amp.a(s) * tab.J(s); },
                   s0, s_hi, n)
                   .value;
    }
    return acc;
}

}  // namespace

double theorem_rhs(const SublevelTable& tab, const AmplitudeProfile& amp, double lambda) {
    const int n = tab.dim_n;
    double y = std::pow(unit_ball_volume(n), -1.0 / n) / std::abs(lambda);
    if (y > tab.l)
        throw std::domain_error("theorem_rhs: lambda too small for the table (w_n^{-1/n}/|lambda| > l)");
    return 5.0 * n * (amp.sup_norm + amp.deriv_l1) * tab.t(y);
}

AlphaResult solve_alpha(const SublevelTable& tab, const TFunction* tf, double lambda) {
    const int n = tab.dim_n;
    const double alam = std::abs(lambda);
    double y = std::pow(unit_ball_volume(n), -1.0 / n) / alam;
    if (y > tab.l)
        throw std::domain_error("solve_alpha: lambda too small for the table");
    AlphaResult res;
    res.alpha = std::pow(tab.t(y), -1.0 / n) / alam;
    double target = std::pow(alam * res.alpha, -static_cast<double>(n));
    if (n >= 2) {
        if (!tf) throw std::invalid_argument("solve_alpha: T function required for n >= 2");
        res.eps0 = res.alpha * tf->T_inv(res.alpha);
    } else {
        // n = 1 bypasses T entirely: eps0 solves t(eps0) = (|lambda| alpha)^{-1}
        res.eps0 = tab.t_inv(target);
    }
    res.residual = std::abs(tab.t(res.eps0) - target) / target;
    if (res.residual > 1e-8)
        throw std::runtime_error("solve_alpha: defining residual exceeds 1e-8 (table/T inconsistency)");
    return res;
}

std::vector<LedgerEntry> proof_ledger(const SublevelTable& tab,
                                      const RearrangedPhase& rearranged,
                                      const TFunction* tf,
                                      const AmplitudeProfile& amp, double lambda) {
    const int n = tab.dim_n;
    const double wn = unit_ball_volume(n);
    const double alam = std::abs(lambda);
    const double norm = amp.sup_norm + amp.deriv_l1;

    AlphaResult sel = solve_alpha(tab, tf, lambda);
    const double alpha = sel.alpha, eps0 = sel.eps0;
    const double t0 = tab.t(eps0);
    const double J0 = tab.J(eps0);

    std::vector<LedgerEntry> ledger;
    auto push = [&](std::string name, double lhs, double rhs) {
        ledger.push_back({std::move(name), lhs, rhs, rhs - lhs});
    };

    double head = std::abs(coarea_segment(tab, amp, lambda, 0.0, eps0));
    push("head_trivial", head, amp.sup_norm * t0);

    double tail = std::abs(coarea_segment(tab, amp, lambda, eps0, tab.l));
    push("tail_ibp", tail, 4.0 * norm * J0 / alam);

    // the level set of the rearranged phase at eps0 is a sphere; its
    // (n-1)-measure n w_n g^{n-1} dominates the n t^{(n-1)/n} used in the chain
    double g0 = rearranged.g(eps0);
    push("sphere_surface", n * std::pow(t0, (n - 1.0) / n),
         n * wn * std::pow(g0, n - 1.0));

    if (n >= 2 && tf) {
        push("density_bound", J0 * alpha, n * std::pow(t0, (n - 1.0) / n));
        InclusionReport inc = gradient_sublevel_inclusion(rearranged, *tf, tab, alpha);
        if (!inc.empty) {
            push("inclusion_measure", wn * std::pow(inc.L, n),
                 tab.t(std::min(inc.L * alpha, tab.l)));
            push("inclusion_radius", inc.L, tf->T_inv(alpha));
        }
    }

    double target = std::pow(alam * alpha, -static_cast<double>(n));
    push("alpha_residual", std::abs(t0 - target), 1e-8 * target);

    double I_abs = std::abs(coarea_segment(tab, amp, lambda, 0.0, tab.l));
    push("theorem", I_abs, 5.0 * n * norm * t0);
    return ledger;
}

std::vector<double> log_lambda_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 1)
        throw std::invalid_argument("log_lambda_grid: need 0 < lo < hi, count >= 1");
    std::vector<double> grid;
    grid.reserve(count);
    if (count == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (int i = 0; i < count; ++i)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return grid;
}

std::vector<BoundReport> verify_bound_sweep(const SublevelTable& tab,
                                            const AmplitudeProfile& amp,
                                            const std::vector<double>& lambdas,
                                            bool with_ledger, int jobs) {
    // shared immutable context for the ledger rows
    RearrangedPhase rearranged;
    TFunction tfun;
    const TFunction* tf = nullptr;
    if (with_ledger || tab.dim_n >= 2) {
        rearranged = build_rearrangement(tab);
        if (tab.dim_n >= 2) {
            // T is only well-defined on assumption-passing phases; without it
            // the sweep still reports |I| and the ratio, with a per-lambda
            // error in place of alpha/eps0.
            try {
                tfun = build_T(tab);
                tf = &tfun;
            } catch (const std::exception&) {
                tf = nullptr;
            }
        }
    }

    std::vector<BoundReport> reports(lambdas.size());
    auto work = [&](size_t k) {
        BoundReport& rep = reports[k];
        rep.lambda = lambdas[k];
        try {
            OscResult I = oscint_coarea(tab, amp, rep.lambda);
            rep.I_abs = std::abs(I.value);
            rep.I_re = I.value.real();
            rep.I_im = I.value.imag();
            rep.I_err = I.err_estimate;
            try {
                rep.rhs = theorem_rhs(tab, amp, rep.lambda);
                rep.in_range = true;
            } catch (const std::domain_error&) {
                rep.in_range = false;
            }
            if (rep.in_range) {
                rep.ratio = rep.I_abs / rep.rhs;
                if (tf || tab.dim_n == 1) {
                    AlphaResult sel = solve_alpha(tab, tf, rep.lambda);
                    rep.alpha = sel.alpha;
                    rep.eps0 = sel.eps0;
                    if (with_ledger)
                        rep.ledger = proof_ledger(tab, rearranged, tf, amp, rep.lambda);
                }
            }
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || lambdas.size() < 2) {
        for (size_t k = 0; k < lambdas.size(); ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&, w]() {
                for (size_t k = w; k < lambdas.size(); k += jobs) work(k);
            });
        for (auto& th : pool) th.join();
    }
    return reports;
}

DecayFit fit_decay_exponent(const std::vector<BoundReport>& reports) {
    std::vector<const BoundReport*> valid;
    for (const auto& r : reports)
        if (r.error.empty() && r.I_abs > 0.0) valid.push_back(&r);
    if (valid.size() < 10)
        throw std::invalid_argument("fit_decay_exponent: need at least 10 reports");
    double lmin = valid.front()->lambda, lmax = lmin;
    for (auto* r : valid) {
        lmin = std::min(lmin, r->lambda);
        lmax = std::max(lmax, r->lambda);
    }
    if (lmax < 100.0 * lmin)
        throw std::invalid_argument("fit_decay_exponent: lambda grid must span >= 2 decades");

    // envelope: max |I| per half-decade window
    std::map<int, const BoundReport*> window_max;
    for (auto* r : valid) {
        int w = static_cast<int>(std::floor(2.0 * std::log10(r->lambda)));
        auto it = window_max.find(w);
        if (it == window_max.end() || r->I_abs > it->second->I_abs) window_max[w] = r;
    }
    if (window_max.size() < 2)
        throw std::invalid_argument("fit_decay_exponent: degenerate window coverage");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double nw = static_cast<double>(window_max.size());
    for (auto& [w, r] : window_max) {
        if (r->I_abs < 1e-300)
            throw std::runtime_error("fit_decay_exponent: |I| below noise floor");
        double x = std::log(r->lambda), y = std::log(r->I_abs);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (nw * sxy - sx * sy) / (nw * sxx - sx * sx);
    DecayFit fit;
    fit.delta = -slope;
    fit.A = 0.0;
    for (auto* r : valid)
        fit.A = std::max(fit.A, r->I_abs * std::pow(r->lambda, fit.delta));
    return fit;
}

Prop1Report proposition1_check(const SublevelTable& tab, double delta, double A,
                               const std::vector<double>& c_grid,
                               const std::vector<double>& eps_grid) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("proposition1_check: need delta in (0, 1)");
    if (!(A > 0.0)) throw std::invalid_argument("proposition1_check: need A > 0");
    Prop1Report rep;
    rep.delta = delta;
    rep.A = A;
    for (double c : c_grid) {
        for (double eps : eps_grid) {
            if (!(eps > 0.0)) continue;
            double hi = std::min(c + eps, tab.l);
            double lo = std::max(c - eps, 0.0);
            double band = hi > lo ? tab.t(hi) - tab.t(lo) : 0.0;
            double ratio = band / (A * std::pow(eps, delta));
            if (ratio > rep.worst_C) {
                rep.worst_C = ratio;
                rep.worst_c = c;
                rep.worst_eps = eps;
            }
        }
    }
    return rep;
}

double nonuniformity_spread(const SublevelTable& tab, const std::vector<double>& lambdas) {
    AmplitudeProfile one = make_constant_amplitude(1.0, tab.l);
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    for (double lam : lambdas) {
        double I = std::abs(oscint_coarea(tab, one, lam).value);
        double ratio = I / tab.t(std::min(1.0 / std::abs(lam), tab.l));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    if (!(lo > 0.0)) throw std::runtime_error("nonuniformity_spread: vanishing ratio");
    return hi / lo;
}

namespace {

nlohmann::json ledger_json(const std::vector<LedgerEntry>& ledger) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : ledger)
        arr.push_back({{"name", e.name}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"margin", e.margin}});
    return arr;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
    os << "lambda,re,im,abs,err,route,rhs,ratio,alpha,eps0,in_range\n";
    char buf[512];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,coarea,%.17g,%.17g,%.17g,%.17g,%d\n",
                      r.lambda, r.I_re, r.I_im, r.I_abs, r.I_err, r.rhs, r.ratio,
                      r.alpha, r.eps0, r.in_range ? 1 : 0);
        os << buf;
    }
}

void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j = {
            {"lambda", r.lambda}, {"re", r.I_re},       {"im", r.I_im},
            {"abs", r.I_abs},     {"err", r.I_err},     {"route", "coarea"},
            {"rhs", r.rhs},       {"ratio", r.ratio},   {"alpha", r.alpha},
            {"eps0", r.eps0},     {"in_range", r.in_range},
        };
        if (!r.error.empty()) j["error"] = r.error;
        if (!r.ledger.empty()) j["ledger"] = ledger_json(r.ledger);
        arr.push_back(std::move(j));
    }
    os << arr.dump(2) << "\n";
}

}  // namespace osc
