#include "osc/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "osc/marching.hpp"
#include "osc/rootfind.hpp"

namespace osc {

namespace {

// nodes[0] = 0, log-spaced on [eps_min_frac*l, 0.1*l], linear on [0.1*l, l].
// Flat phases concentrate all structure near eps = 0, so half the budget
// goes to the logarithmic head.
std::vector<double> height_nodes(double l, int K, double eps_min_frac) {
    if (K < 8) throw std::invalid_argument("height_nodes: K too small");
    std::vector<double> nodes;
    nodes.reserve(K + 1);
    nodes.push_back(0.0);
    int k_log = K / 2;
    int k_lin = K - k_log;
    double lo = eps_min_frac * l, hi = 0.1 * l;
    for (int i = 0; i < k_log; ++i)
        nodes.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / k_log));
    for (int i = 0; i <= k_lin; ++i)
        nodes.push_back(hi + (l - hi) * static_cast<double>(i) / k_lin);
    nodes.back() = l;
    return nodes;
}

double grad_norm(const GridPhase2D& g, double x, double y) {
    return std::hypot(g.interp(g.gx, x, y), g.interp(g.gy, x, y));
}

}  // namespace

double SublevelTable::t(double eps) const {
    eps = std::clamp(eps, 0.0, l);
    if (t_fn) return t_fn(eps);
    if (eps == 0.0) return 0.0;
    return interpolant()(eps);
}

double SublevelTable::t_inv(double u) const {
    if (u <= 0.0) return 0.0;
    if (t_inv_fn) return t_inv_fn(u);
    return interpolant().inverse(u);
}

double SublevelTable::J(double s) const {
    if (J_fn) return J_fn(s);
    return interpolant().derivative(s);
}

const MonotoneCubic& SublevelTable::interpolant() const {
    if (!interp_.valid()) interp_ = MonotoneCubic(nodes, values);
    return interp_;
}

SublevelTable build_sublevel_table_radial(const RadialProfile& p, double l, int K) {
    if (!(l > 0.0) || !(l < p.F(p.R)))
        throw std::invalid_argument("build_sublevel_table_radial: need 0 < l < F(R)");
    const int n = p.dim_n;
    const double wn = unit_ball_volume(n);
    SublevelTable tab;
    tab.dim_n = n;
    tab.l = l;
    tab.nodes = height_nodes(l, K, 1e-9);
    tab.values.reserve(tab.nodes.size());
    for (double eps : tab.nodes) {
        double r = p.invert(eps);
        tab.values.push_back(wn * std::pow(r, n));
    }
    for (size_t i = 1; i < tab.values.size(); ++i)
        if (!(tab.values[i] > tab.values[i - 1]))
            throw std::runtime_error(
                "build_sublevel_table_radial: t not strictly increasing (non-monotone profile?)");
    tab.t_fn = [p, wn, n](double eps) {
        double r = p.invert(eps);
        return wn * std::pow(r, n);
    };
    tab.t_inv_fn = [p, wn, n](double u) {
        if (u <= 0.0) return 0.0;
        return p.F(std::pow(u / wn, 1.0 / n));
    };
    tab.J_fn = [p](double s) { return coarea_density(p, s); };
    tab.Jp_fn = [p](double s) { return coarea_density_derivative(p, s); };
    return tab;
}

namespace {

// area of {f <= eps} within one grid cell, by 8x8 bilinear subdivision with
// 4x4 midpoint sampling on mixed subcells
double cell_area_fraction(double v00, double v10, double v01, double v11) {
    const int S = 8, M = 4;
    auto bilin = [&](double a, double b) {
        return (1 - a) * (1 - b) * v00 + a * (1 - b) * v10 + (1 - a) * b * v01 + a * b * v11;
    };
    double frac = 0.0;
    const double sub = 1.0 / S;
    for (int sj = 0; sj < S; ++sj) {
        for (int si = 0; si < S; ++si) {
            double a0 = si * sub, b0 = sj * sub;
            double c00 = bilin(a0, b0), c10 = bilin(a0 + sub, b0);
            double c01 = bilin(a0, b0 + sub), c11 = bilin(a0 + sub, b0 + sub);
            bool i00 = c00 <= 0, i10 = c10 <= 0, i01 = c01 <= 0, i11 = c11 <= 0;
            if (i00 && i10 && i01 && i11) {
                frac += sub * sub;
            } else if (i00 || i10 || i01 || i11) {
                int cnt = 0;
                for (int mj = 0; mj < M; ++mj)
                    for (int mi = 0; mi < M; ++mi)
                        if (bilin(a0 + (mi + 0.5) * sub / M, b0 + (mj + 0.5) * sub / M) <= 0)
                            ++cnt;
                frac += sub * sub * cnt / (M * M);
            }
        }
    }
    return frac;
}

// area and boundary-cell count for {f <= eps}
std::pair<double, int> grid_area(const GridPhase2D& g, double eps) {
    double area = 0.0;
    int boundary = 0;
    const double cell = g.hx * g.hy;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            double v00 = g.f[g.idx(i, j)] - eps;
            double v10 = g.f[g.idx(i + 1, j)] - eps;
            double v01 = g.f[g.idx(i, j + 1)] - eps;
            double v11 = g.f[g.idx(i + 1, j + 1)] - eps;
            bool i00 = v00 <= 0, i10 = v10 <= 0, i01 = v01 <= 0, i11 = v11 <= 0;
            if (i00 && i10 && i01 && i11) {
                area += cell;
            } else if (i00 || i10 || i01 || i11) {
                ++boundary;
                area += cell * cell_area_fraction(v00, v10, v01, v11);
            }
        }
    }
    return {area, boundary};
}

}  // namespace

SublevelTable build_sublevel_table_grid(const GridPhase2D& p, double l, int K) {
    // S(l) must sit strictly inside the domain
    for (int i = 0; i < p.nx; ++i)
        if (p.f[p.idx(i, 0)] <= l || p.f[p.idx(i, p.ny - 1)] <= l)
            throw std::invalid_argument("build_sublevel_table_grid: S(l) touches the boundary");
    for (int j = 0; j < p.ny; ++j)
        if (p.f[p.idx(0, j)] <= l || p.f[p.idx(p.nx - 1, j)] <= l)
            throw std::invalid_argument("build_sublevel_table_grid: S(l) touches the boundary");

    SublevelTable tab;
    tab.dim_n = 2;
    tab.l = l;
    // the grid cannot resolve sublevel sets far below cell scale, so the
    // logarithmic head starts at 1e-3*l rather than 1e-9*l
    tab.nodes = height_nodes(l, K, 1e-3);
    tab.values.reserve(tab.nodes.size());
    const double cell = p.hx * p.hy;
    double worst_err = 0.0;
    for (double eps : tab.nodes) {
        if (eps == 0.0) {
            tab.values.push_back(0.0);
            continue;
        }
        auto [area, boundary] = grid_area(p, eps);
        tab.values.push_back(area);
        worst_err = std::max(worst_err, cell * boundary / 10.0);
    }
    tab.err_bound = worst_err;
    for (size_t i = 1; i < tab.values.size(); ++i)
        if (!(tab.values[i] > tab.values[i - 1]))
            throw std::runtime_error("build_sublevel_table_grid: t not strictly increasing");
    tab.interpolant();  // build eagerly; the table is immutable afterwards
    return tab;
}

double coarea_density(const RadialProfile& p, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("coarea_density: s must be positive");
    double r = p.invert(s);
    double n = p.dim_n;
    return n * unit_ball_volume(p.dim_n) * std::pow(r, n - 1.0) / p.dF(r);
}

double coarea_density(const GridPhase2D& p, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("coarea_density: s must be positive");
    return contour_integral(p, s, [&](double x, double y) {
        return 1.0 / grad_norm(p, x, y);
    });
}

double coarea_density_derivative(const RadialProfile& p, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("coarea_density_derivative: s must be positive");
    double r = p.invert(s);
    double n = p.dim_n;
    double d1 = p.dF(r), d2 = p.d2F(r);
    return n * unit_ball_volume(p.dim_n) * std::pow(r, n - 2.0) *
           ((n - 1.0) * d1 - r * d2) / (d1 * d1 * d1);
}

double coarea_density_derivative(const GridPhase2D& p, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("coarea_density_derivative: s must be positive");
    return contour_integral(p, s, [&](double x, double y) {
        double gx = p.interp(p.gx, x, y), gy = p.interp(p.gy, x, y);
        double axx = p.interp(p.hxx, x, y), axy = p.interp(p.hxy, x, y),
               ayy = p.interp(p.hyy, x, y);
        double g2 = gx * gx + gy * gy;
        double lap = axx + ayy;
        double quad = gx * (axx * gx + axy * gy) + gy * (axy * gx + ayy * gy);
        double div_x = (g2 * lap - 2.0 * quad) / (g2 * g2);
        return div_x / std::sqrt(g2);
    });
}

namespace {

// Concavity of the table values via slope comparisons of consecutive
// chords. Violations are normalized by the local slope magnitude so that
// exact-concave closed forms pass under floating-point noise.
RouteResult concavity_route(const SublevelTable& tab, double rel_tol) {
    RouteResult r;
    r.applicable = true;
    r.pass = true;
    double prev_slope = 0.0;
    bool have_prev = false;
    for (size_t k = 0; k + 1 < tab.nodes.size(); ++k) {
        double slope = (tab.values[k + 1] - tab.values[k]) / (tab.nodes[k + 1] - tab.nodes[k]);
        if (have_prev) {
            double scale = std::max(std::abs(prev_slope), std::abs(slope));
            double viol = (slope - prev_slope) / scale;
            if (viol > r.worst) {
                r.worst = viol;
                r.worst_at = tab.nodes[k];
            }
            if (viol > rel_tol) r.pass = false;
        }
        prev_slope = slope;
        have_prev = true;
    }
    return r;
}

std::vector<double> sample_points(double lo, double hi, int n_log, int n_lin) {
    std::vector<double> pts;
    for (int i = 0; i <= n_log; ++i)
        pts.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n_log));
    for (int i = 1; i < n_lin; ++i)
        pts.push_back(lo + (hi - lo) * static_cast<double>(i) / n_lin);
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

AssumptionVerdict check_geometric_assumption(const RadialProfile& p, const SublevelTable& tab) {
    AssumptionVerdict v;
    v.concavity = concavity_route(tab, 1e-9);

    v.radial.applicable = true;
    v.radial.pass = true;
    double r_l = p.invert(tab.l);
    for (double r : sample_points(1e-9 * r_l, r_l, 100, 100)) {
        double lhs = (p.dim_n - 1.0) * p.dF(r);
        double rhs = r * p.d2F(r);
        double margin = (lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
        if (margin > v.radial.worst) {
            v.radial.worst = margin;
            v.radial.worst_at = r;
        }
        if (margin > 1e-12) v.radial.pass = false;
    }

    v.divergence.applicable = true;
    v.divergence.pass = true;
    for (double s : sample_points(1e-3 * tab.l, 0.999 * tab.l, 100, 100)) {
        double jp = coarea_density_derivative(p, s);
        double scale = std::abs(jp) + coarea_density(p, s) / s;
        double margin = jp / scale;
        if (margin > v.divergence.worst) {
            v.divergence.worst = margin;
            v.divergence.worst_at = s;
        }
        if (margin > 1e-9) v.divergence.pass = false;
    }

    v.routes_agree = (v.concavity.pass == v.radial.pass) &&
                     (v.radial.pass == v.divergence.pass);
    v.overall_pass = v.concavity.pass && v.radial.pass && v.divergence.pass;
    return v;
}

AssumptionVerdict check_geometric_assumption(const GridPhase2D& p, const SublevelTable& tab) {
    AssumptionVerdict v;
    // cell counting is only accurate to the sub-sample step, so the grid
    // tolerance sits far above the 1e-9 used for exact radial tables
    const double grid_tol = 0.02;
    v.concavity = concavity_route(tab, grid_tol);

    v.radial.applicable = false;

    v.divergence.applicable = true;
    v.divergence.pass = true;
    for (double s : sample_points(1e-2 * tab.l, 0.999 * tab.l, 50, 50)) {
        double jp = coarea_density_derivative(p, s);
        double scale = std::abs(jp) + coarea_density(p, s) / s;
        double margin = jp / scale;
        if (margin > v.divergence.worst) {
            v.divergence.worst = margin;
            v.divergence.worst_at = s;
        }
        if (margin > grid_tol) v.divergence.pass = false;
    }

    v.routes_agree = v.concavity.pass == v.divergence.pass;
    v.overall_pass = v.concavity.pass && v.divergence.pass;
    return v;
}

bool band_measure_monotonicity(const SublevelTable& tab, double h) {
    if (!(h > 0.0) || !(h < tab.l))
        throw std::invalid_argument("band_measure_monotonicity: need 0 < h < l");
    const int N = 400;
    double tol = tab.exact() ? 1e-9 : 0.02;
    double prev = 0.0;
    bool have_prev = false;
    double scale = tab.t(tab.l);
    for (int i = 0; i <= N; ++i) {
        double y = (tab.l - h) * i / N;
        double band = tab.t(y + h) - tab.t(y);
        if (have_prev && band > prev + tol * scale + 2.0 * tab.err_bound) return false;
        prev = band;
        have_prev = true;
    }
    return true;
}

double choose_l(const RadialProfile& p) {
    return p.F(0.95 * p.R);
}

double choose_l(const GridPhase2D& p) {
    double xm = p.x_at(p.min_i), ym = p.y_at(p.min_j);
    double x1 = p.x_at(p.nx - 1), y1 = p.y_at(p.ny - 1);
    double d = std::min({xm - p.x0, x1 - xm, ym - p.y0, y1 - ym});
    if (!(d > 0.0))
        throw std::invalid_argument("choose_l: minimum on the domain boundary");
    double rho = 0.95 * d;
    double lmin = std::numeric_limits<double>::max();
    const int N = 720;
    for (int k = 0; k < N; ++k) {
        double a = 2.0 * M_PI * k / N;
        lmin = std::min(lmin, p.f_at(xm + rho * std::cos(a), ym + rho * std::sin(a)));
    }
    return lmin;
}

void write_table_csv(std::ostream& os, const SublevelTable& tab) {
    os << "epsilon,t,J,Jprime\n";
    char buf[256];
    for (size_t k = 0; k < tab.nodes.size(); ++k) {
        double s = tab.nodes[k];
        double j = 0.0, jp = 0.0;
        if (s > 0.0 && s < tab.l) {
            j = tab.J(s);
            jp = tab.Jp_fn ? tab.Jp_fn(s) : 0.0;
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                      s, tab.values[k], j, jp);
        os << buf;
    }
}

}  // namespace osc
