#pragma once
#include <functional>
#include <string>
#include <vector>

#include "osc/sublevel.hpp"

namespace osc {

// Non-decreasing Schwarz rearrangement of a phase, through
// g(y) = (t(y)/w_n)^{1/n}. The rearranged phase on the ball of radius
// B_radius is f(x) = g_inv(|x|).
struct RearrangedPhase {
    std::function<double(double)> g;       // height -> radius
    std::function<double(double)> g_inv;   // radius -> height
    std::function<double(double)> slope;   // radial slope of g_inv
    double B_radius = 0.0;
    int dim_n = 1;
    double l = 0.0;
};

// T(x) = t^{-1}(w_n x^n)/x on (0, B_radius], strictly increasing for n >= 2
// on assumption-passing phases.
struct TFunction {
    std::function<double(double)> T;
    std::function<double(double)> T_inv;
    double B_radius = 0.0;
    int dim_n = 1;

    // n t(y)/t'(y) > y, the strict-monotonicity condition, at sampled y.
    bool monotonicity_check_passed = false;
    double worst_monotonicity_margin = 0.0;  // min over samples of n t/t' - y
};

struct InclusionReport {
    double alpha = 0.0;
    double L = 0.0;             // sup{|x| : slope of rearranged phase <= alpha}
    bool empty = false;         // A_alpha empty; trivially passes
    double measure_margin = 0.0;  // t(L*alpha) - w_n L^n, must be >= 0
    double radius_margin = 0.0;   // T_inv(alpha) - L, must be >= 0
    bool pass = false;
};

RearrangedPhase build_rearrangement(const SublevelTable& table);

// max over table nodes of |w_n g(y)^n - t(y)|
double check_equimeasurable(const RearrangedPhase& r, const SublevelTable& table);

TFunction build_T(const SublevelTable& table);

InclusionReport gradient_sublevel_inclusion(const RearrangedPhase& r,
                                            const TFunction& T,
                                            const SublevelTable& table,
                                            double alpha);

}  // namespace osc
