#include "osc/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osc/rootfind.hpp"

namespace osc {

RearrangedPhase build_rearrangement(const SublevelTable& table) {
    const int n = table.dim_n;
    const double wn = unit_ball_volume(n);
    RearrangedPhase r;
    r.dim_n = n;
    r.l = table.l;
    r.B_radius = std::pow(table.t(table.l) / wn, 1.0 / n);
    r.g = [table, wn, n](double y) {
        return std::pow(table.t(y) / wn, 1.0 / n);
    };
    r.g_inv = [table, wn, n](double rho) {
        return table.t_inv(wn * std::pow(rho, n));
    };
    // (g_inv)'(rho) = n w_n rho^{n-1} / J(g_inv(rho)), from t(g_inv) = w_n rho^n
    r.slope = [table, wn, n](double rho) {
        double y = table.t_inv(wn * std::pow(rho, n));
        return n * wn * std::pow(rho, n - 1.0) / table.J(y);
    };
    return r;
}

double check_equimeasurable(const RearrangedPhase& r, const SublevelTable& table) {
    const double wn = unit_ball_volume(r.dim_n);
    double worst = 0.0;
    for (size_t k = 0; k < table.nodes.size(); ++k) {
        double dev = std::abs(wn * std::pow(r.g(table.nodes[k]), r.dim_n) - table.values[k]);
        worst = std::max(worst, dev);
    }
    return worst;
}

TFunction build_T(const SublevelTable& table) {
    const int n = table.dim_n;
    if (n < 2)
        throw std::invalid_argument(
            "build_T: strict monotonicity of T is only guaranteed for n >= 2; "
            "the n = 1 path verifies the split height directly");
    const double wn = unit_ball_volume(n);
    TFunction tf;
    tf.dim_n = n;
    tf.B_radius = std::pow(table.t(table.l) / wn, 1.0 / n);
    tf.T = [table, wn, n](double x) {
        return table.t_inv(wn * std::pow(x, n)) / x;
    };
    const double B = tf.B_radius;
    tf.T_inv = [T = tf.T, B](double alpha) {
        if (!(alpha > 0.0) || alpha > T(B))
            throw std::domain_error("T_inv: alpha outside the range of T");
        double lo = B;
        while (T(lo) > alpha) {
            lo *= 0.25;
            if (lo < 1e-300) throw std::runtime_error("T_inv: bracket search failed");
        }
        if (lo == B) return B;
        return brent([&](double x) { return T(x) - alpha; }, lo, std::min(4.0 * lo, B));
    };

    // strict-monotonicity condition n t(y)/t'(y) > y at sampled heights
    tf.monotonicity_check_passed = true;
    tf.worst_monotonicity_margin = std::numeric_limits<double>::max();
    const int N = 200;
    for (int i = 1; i <= N; ++i) {
        double y = table.l * (0.001 + 0.998 * i / N);
        double margin = n * table.t(y) / table.J(y) - y;
        tf.worst_monotonicity_margin = std::min(tf.worst_monotonicity_margin, margin);
        if (!(margin > 0.0)) tf.monotonicity_check_passed = false;
    }
    if (!tf.monotonicity_check_passed)
        throw std::runtime_error(
            "build_T: n t(y)/t'(y) > y fails at a sampled height (assumption failure upstream)");
    return tf;
}

InclusionReport gradient_sublevel_inclusion(const RearrangedPhase& r,
                                            const TFunction& tf,
                                            const SublevelTable& table,
                                            double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("gradient_sublevel_inclusion: alpha must be positive");
    const int n = r.dim_n;
    const double wn = unit_ball_volume(n);
    const double B = r.B_radius;
    InclusionReport rep;
    rep.alpha = alpha;

    double rho_min = 1e-12 * B;
    if (r.slope(rho_min) > alpha) {
        rep.empty = true;
        rep.pass = true;
        return rep;
    }
    double L = r.slope(B) <= alpha
                   ? B
                   : brent([&](double rho) { return r.slope(rho) - alpha; }, rho_min, B);
    rep.L = L;

    double eps = std::min(L * alpha, table.l);
    rep.measure_margin = table.t(eps) - wn * std::pow(L, n);
    rep.radius_margin = tf.T_inv(alpha) - L;
    double scale = table.t(table.l);
    rep.pass = rep.measure_margin >= -1e-9 * scale && rep.radius_margin >= -1e-9 * B;
    return rep;
}

}  // namespace osc
