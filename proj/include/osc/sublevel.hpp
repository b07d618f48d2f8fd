#pragma once
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "osc/interp.hpp"
#include "osc/profiles.hpp"

namespace osc {

// Sampled sublevel-set measure t(eps) = |S(eps)| on [0, l], with the
// coarea density J = t' and the evaluators needed downstream. Radial
// builders attach closed-form evaluators; grid tables fall back on
// shape-preserving interpolation and carry a reported error bound.
class SublevelTable {
public:
    std::vector<double> nodes;   // heights, nodes[0] = 0, nodes.back() = l
    std::vector<double> values;  // t at the nodes
    int dim_n = 1;
    double l = 0.0;
    double err_bound = 0.0;      // 0 for exact (radial) construction

    std::function<double(double)> t_fn;      // exact when available
    std::function<double(double)> t_inv_fn;
    std::function<double(double)> J_fn;
    std::function<double(double)> Jp_fn;     // may be empty

    double t(double eps) const;
    double t_inv(double u) const;
    double J(double s) const;
    bool exact() const { return err_bound == 0.0; }

    // lazily built interpolant used when no exact evaluators are attached
    const MonotoneCubic& interpolant() const;

private:
    mutable MonotoneCubic interp_;
};

// Per-route result of the geometric-assumption check.
struct RouteResult {
    bool applicable = false;
    bool pass = false;
    double worst = 0.0;     // worst (largest) violation margin, normalized
    double worst_at = 0.0;  // height or radius of the worst sample
};

struct AssumptionVerdict {
    RouteResult concavity;   // second differences of t
    RouteResult radial;      // (n-1)F'(r) <= r F''(r)
    RouteResult divergence;  // J'(s) <= 0
    bool overall_pass = false;
    bool routes_agree = false;
};

// t(eps) = w_n F^{-1}(eps)^n at K nodes, log-spaced near 0 and linear near l.
SublevelTable build_sublevel_table_radial(const RadialProfile& p, double l, int K = 512);

// Cell-counting area estimator with sub-cell refinement on boundary cells.
// Throws if S(l) touches the rectangle boundary.
SublevelTable build_sublevel_table_grid(const GridPhase2D& p, double l, int K = 128);

// J(s) = integral over f^{-1}(s) of 1/|grad f|.
double coarea_density(const RadialProfile& p, double s);
double coarea_density(const GridPhase2D& p, double s);

// J'(s) via the divergence-form level-set integrand
// (|grad f|^2 Lap f - 2 grad f . Hf . grad f) / |grad f|^4.
double coarea_density_derivative(const RadialProfile& p, double s);
double coarea_density_derivative(const GridPhase2D& p, double s);

AssumptionVerdict check_geometric_assumption(const RadialProfile& p, const SublevelTable& table);
AssumptionVerdict check_geometric_assumption(const GridPhase2D& p, const SublevelTable& table);

// |{y <= f <= y+h}| non-increasing in y over [0, l-h].
bool band_measure_monotonicity(const SublevelTable& table, double h);

// Largest height whose sublevel set stays safely inside the domain:
// radial rule l = F(0.95 R); grid rule takes the minimum of f over the
// circle of radius 0.95 * dist(min, boundary).
double choose_l(const RadialProfile& p);
double choose_l(const GridPhase2D& p);

// CSV with columns epsilon,t,J,Jprime (17 significant digits).
void write_table_csv(std::ostream& os, const SublevelTable& table);

}  // namespace osc
