#include "osc/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osc/rootfind.hpp"

namespace osc {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Pass: return "pass";
        case Classification::Boundary: return "boundary";
        case Classification::Fail: return "fail";
    }
    return "?";
}

double RadialProfile::invert(double eps) const {
    if (eps <= 0.0) return 0.0;
    if (F_inv) return F_inv(eps);
    return brent([&](double r) { return F(r) - eps; }, 0.0, R);
}

double GridPhase2D::interp(const std::vector<double>& v, double x, double y) const {
    double u = (x - x0) / hx, w = (y - y0) / hy;
    int i = std::clamp(static_cast<int>(std::floor(u)), 0, nx - 2);
    int j = std::clamp(static_cast<int>(std::floor(w)), 0, ny - 2);
    double a = u - i, b = w - j;
    return (1 - a) * (1 - b) * v[idx(i, j)] + a * (1 - b) * v[idx(i + 1, j)] +
           (1 - a) * b * v[idx(i, j + 1)] + a * b * v[idx(i + 1, j + 1)];
}

AmplitudeProfile make_constant_amplitude(double c, double l) {
    AmplitudeProfile amp;
    amp.a = [c](double) { return c; };
    amp.da = [](double) { return 0.0; };
    amp.sup_norm = std::abs(c);
    amp.deriv_l1 = 0.0;
    amp.monotone = true;
    amp.l = l;
    amp.name = "const";
    return amp;
}

AmplitudeProfile make_linear_amplitude(double l) {
    AmplitudeProfile amp;
    amp.a = [l](double s) { return 1.0 - s / l; };
    amp.da = [l](double) { return -1.0 / l; };
    amp.sup_norm = 1.0;
    amp.deriv_l1 = 1.0;  // |a'| = 1/l over an interval of length l
    amp.monotone = true;
    amp.l = l;
    amp.name = "linear";
    return amp;
}

RadialProfile make_power_profile(double m, double R, int n) {
    if (m < 1.0)
        throw std::invalid_argument("make_power_profile: m < 1 is not convex increasing on the ray");
    if (R <= 0.0) throw std::invalid_argument("make_power_profile: R must be positive");
    RadialProfile p;
    p.F = [m](double r) { return std::pow(r, m); };
    p.dF = [m](double r) { return m * std::pow(r, m - 1.0); };
    p.d2F = [m](double r) { return m * (m - 1.0) * std::pow(r, m - 2.0); };
    p.F_inv = [m](double e) { return std::pow(e, 1.0 / m); };
    p.R = R;
    p.dim_n = n;
    p.smooth_at_origin = m >= 2.0;
    p.name = "power";
    p.classification = m > n   ? Classification::Pass
                       : m == n ? Classification::Boundary
                                : Classification::Fail;
    return p;
}

RadialProfile make_flat_profile(double R, int n) {
    if (R <= 0.0) throw std::invalid_argument("make_flat_profile: R must be positive");
    RadialProfile p;
    p.F = [](double r) { return r > 0.0 ? std::exp(-1.0 / r) : 0.0; };
    p.dF = [](double r) { return r > 0.0 ? std::exp(-1.0 / r) / (r * r) : 0.0; };
    p.d2F = [](double r) {
        return r > 0.0 ? std::exp(-1.0 / r) * (1.0 - 2.0 * r) / (r * r * r * r) : 0.0;
    };
    p.F_inv = [](double e) { return e > 0.0 ? 1.0 / std::log(1.0 / e) : 0.0; };
    p.R = R;
    p.dim_n = n;
    p.smooth_at_origin = true;
    p.name = "flat";
    // radial criterion (n-1)F' <= rF'' holds iff r <= 1/(n+1)
    double r_crit = 1.0 / (n + 1.0);
    p.classification = R < r_crit    ? Classification::Pass
                       : R == r_crit ? Classification::Boundary
                                     : Classification::Fail;
    return p;
}

namespace {

// cubic smoothstep and its derivative
double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }
double smoothstep_d(double u) { return 6.0 * u * (1.0 - u); }
// integral of smoothstep from 0 to u
double smoothstep_int(double u) { return u * u * u * (1.0 - 0.5 * u); }

}  // namespace

RadialProfile make_staircase_profile(std::vector<double> slopes,
                                     std::vector<double> breakpoints,
                                     double smoothing_width, double R, int n) {
    if (slopes.empty()) throw std::invalid_argument("staircase: need at least one slope");
    for (double s : slopes)
        if (s <= 0.0) throw std::invalid_argument("staircase: slopes must be positive");
    for (size_t i = 1; i < slopes.size(); ++i)
        if (slopes[i] < slopes[i - 1])
            throw std::invalid_argument("staircase: non-monotone slopes break convexity");
    if (breakpoints.size() + 1 < slopes.size())
        throw std::invalid_argument("staircase: need a breakpoint per slope transition");
    for (size_t i = 1; i < breakpoints.size(); ++i)
        if (breakpoints[i] <= breakpoints[i - 1])
            throw std::invalid_argument("staircase: breakpoints must be strictly increasing");

    double min_gap = R;
    if (!breakpoints.empty()) {
        min_gap = breakpoints.front();
        for (size_t i = 1; i < breakpoints.size(); ++i)
            min_gap = std::min(min_gap, breakpoints[i] - breakpoints[i - 1]);
        min_gap = std::min(min_gap, R - breakpoints.back());
    }
    double w = smoothing_width > 0.0 ? smoothing_width : 0.05 * min_gap;
    if (!breakpoints.empty() && w >= min_gap)
        throw std::invalid_argument("staircase: smoothing width exceeds breakpoint gap");

    size_t ntrans = slopes.size() > 1 ? slopes.size() - 1 : 0;
    std::vector<double> bp(breakpoints.begin(), breakpoints.begin() + ntrans);

    // derivative: piecewise constant with smoothstep blends of width w
    auto dF = [slopes, bp, w](double r) {
        double v = slopes[0];
        for (size_t k = 0; k < bp.size(); ++k) {
            double a = bp[k] - 0.5 * w;
            if (r <= a) break;
            double u = std::min((r - a) / w, 1.0);
            v += (slopes[k + 1] - slopes[k]) * smoothstep(u);
        }
        return v;
    };
    auto d2F = [slopes, bp, w](double r) {
        double v = 0.0;
        for (size_t k = 0; k < bp.size(); ++k) {
            double a = bp[k] - 0.5 * w;
            if (r > a && r < a + w)
                v += (slopes[k + 1] - slopes[k]) * smoothstep_d((r - a) / w) / w;
        }
        return v;
    };
    // F by accumulating exact antiderivatives of the blend pieces
    auto F = [slopes, bp, w](double r) {
        double v = slopes[0] * r;
        for (size_t k = 0; k < bp.size(); ++k) {
            double a = bp[k] - 0.5 * w;
            if (r <= a) break;
            double ds = slopes[k + 1] - slopes[k];
            if (r >= a + w)
                v += ds * (w * smoothstep_int(1.0) + (r - a - w));
            else
                v += ds * w * smoothstep_int((r - a) / w);
        }
        return v;
    };

    RadialProfile p;
    p.F = F;
    p.dF = dF;
    p.d2F = d2F;
    p.R = R;
    p.dim_n = n;
    p.smooth_at_origin = false;  // F'(0) = slopes[0] > 0, cone-like at the origin
    p.name = "staircase";
    // classification by the radial criterion at sampled radii
    bool ok = true;
    for (int i = 1; i <= 400 && ok; ++i) {
        double r = R * i / 400.0;
        if ((n - 1) * p.dF(r) > r * p.d2F(r) + 1e-12 * (1.0 + std::abs(r * p.d2F(r))))
            ok = false;
    }
    p.classification = ok ? Classification::Pass : Classification::Fail;
    return p;
}

GridPhase2D make_grid_phase(const std::function<double(double, double)>& f,
                            const std::function<void(double, double, double&, double&)>& grad,
                            const std::function<void(double, double, double&, double&, double&)>& hess,
                            double x0, double y0, double x1, double y1, int N) {
    if (N < 3) throw std::invalid_argument("make_grid_phase: N too small");
    GridPhase2D g;
    g.x0 = x0;
    g.y0 = y0;
    g.nx = N;
    g.ny = N;
    g.hx = (x1 - x0) / (N - 1);
    g.hy = (y1 - y0) / (N - 1);
    size_t total = static_cast<size_t>(N) * N;
    g.f.resize(total);
    g.gx.resize(total);
    g.gy.resize(total);
    g.hxx.resize(total);
    g.hxy.resize(total);
    g.hyy.resize(total);
    double fmin = std::numeric_limits<double>::max();
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            double x = g.x_at(i), y = g.y_at(j);
            size_t k = g.idx(i, j);
            g.f[k] = f(x, y);
            grad(x, y, g.gx[k], g.gy[k]);
            hess(x, y, g.hxx[k], g.hxy[k], g.hyy[k]);
            if (g.f[k] < fmin) {
                fmin = g.f[k];
                g.min_i = i;
                g.min_j = j;
            }
        }
    }
    // normalize the critical value to 0
    for (auto& v : g.f) v -= fmin;
    g.name = "grid2d";
    return g;
}

GridPhase2D make_quadratic_grid(double cx, double cy, double half, int N) {
    auto g = make_grid_phase(
        [cx, cy](double x, double y) { return cx * x * x + cy * y * y; },
        [cx, cy](double x, double y, double& dx, double& dy) {
            dx = 2.0 * cx * x;
            dy = 2.0 * cy * y;
        },
        [cx, cy](double, double, double& axx, double& axy, double& ayy) {
            axx = 2.0 * cx;
            axy = 0.0;
            ayy = 2.0 * cy;
        },
        -half, -half, half, half, N);
    return g;
}

bool ValidationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

bool ValidationReport::usable(bool allow_nonsmooth_origin) const {
    for (const auto& c : checks) {
        if (c.pass) continue;
        if (c.check == "smooth_at_origin" && allow_nonsmooth_origin) continue;
        return false;
    }
    return true;
}

ValidationReport validate_phase(const RadialProfile& p) {
    ValidationReport rep;

    CheckResult norm{"normalization", true, std::abs(p.F(0.0)), 0.0};
    norm.pass = norm.worst == 0.0;
    rep.checks.push_back(norm);

    CheckResult incr{"strictly_increasing", true, 0.0, 0.0};
    CheckResult conv{"convexity", true, 0.0, 0.0};
    CheckResult cons{"derivative_consistency", true, 0.0, 0.0};
    double h = 1e-5 * p.R;
    for (int i = 1; i <= 100; ++i) {
        double r = p.R * i / 100.0;
        double d1 = p.dF(r);
        if (d1 <= 0.0 && d1 < incr.worst) {
            incr.worst = d1;
            incr.worst_at = r;
            incr.pass = false;
        }
        double d2 = p.d2F(r);
        if (d2 < 0.0 && d2 < conv.worst) {
            conv.worst = d2;
            conv.worst_at = r;
            conv.pass = false;
        }
        if (r > 2 * h && r < p.R - 2 * h) {
            double fd = (p.F(r + h) - p.F(r - h)) / (2.0 * h);
            double err = std::abs(d1 - fd) / (1.0 + std::abs(d1));
            if (err > cons.worst) {
                cons.worst = err;
                cons.worst_at = r;
            }
        }
    }
    cons.pass = cons.worst <= 1e-6;
    rep.checks.push_back(incr);
    rep.checks.push_back(conv);
    rep.checks.push_back(cons);

    CheckResult smooth{"smooth_at_origin", p.smooth_at_origin, p.dF(1e-12 * p.R), 0.0};
    rep.checks.push_back(smooth);
    return rep;
}

ValidationReport validate_phase(const GridPhase2D& p) {
    ValidationReport rep;

    CheckResult mini{"unique_interior_minimum", true, 0.0, 0.0};
    mini.pass = p.min_i > 0 && p.min_i < p.nx - 1 && p.min_j > 0 && p.min_j < p.ny - 1;
    rep.checks.push_back(mini);

    double scale = *std::max_element(p.f.begin(), p.f.end());
    CheckResult norm{"normalization", true, *std::min_element(p.f.begin(), p.f.end()), 0.0};
    norm.pass = norm.worst == 0.0;
    rep.checks.push_back(norm);

    CheckResult psd{"hessian_psd", true, 0.0, 0.0};
    CheckResult cons{"gradient_consistency", true, 0.0, 0.0};
    for (int j = 1; j < p.ny - 1; ++j) {
        for (int i = 1; i < p.nx - 1; ++i) {
            size_t k = p.idx(i, j);
            // smaller eigenvalue of the 2x2 Hessian
            double tr = p.hxx[k] + p.hyy[k];
            double det = p.hxx[k] * p.hyy[k] - p.hxy[k] * p.hxy[k];
            double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
            double lam_min = 0.5 * tr - disc;
            if (lam_min < -1e-10 * scale && lam_min < psd.worst) {
                psd.worst = lam_min;
                psd.worst_at = p.x_at(i);
                psd.pass = false;
            }
            double fdx = (p.f[p.idx(i + 1, j)] - p.f[p.idx(i - 1, j)]) / (2.0 * p.hx);
            double fdy = (p.f[p.idx(i, j + 1)] - p.f[p.idx(i, j - 1)]) / (2.0 * p.hy);
            double err = std::hypot(p.gx[k] - fdx, p.gy[k] - fdy) /
                         (1.0 + std::hypot(p.gx[k], p.gy[k]));
            if (err > cons.worst) {
                cons.worst = err;
                cons.worst_at = p.x_at(i);
            }
        }
    }
    cons.pass = cons.worst <= 1e-4;
    rep.checks.push_back(psd);
    rep.checks.push_back(cons);
    return rep;
}

const std::vector<CatalogEntry>& phase_catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"power", "m (>=1), R (>0), n (>=1); default m=2 R=1 n=2",
         "pass for m > n, boundary at m = n, fail for m < n"},
        {"flat", "R (>0), n (>=1); default R=0.45 n=2",
         "pass for R < 1/(n+1), fail otherwise (default fails near the rim)"},
        {"staircase", "slopes (positive, non-decreasing), breakpoints, width, R, n; "
         "default slopes=1,8 breakpoints=0.5 width=0.05 R=1 n=2",
         "fail for slope ratios >= 4 in n = 2"},
        {"grid2d", "cx (>0), cy (>0), half (>0), N; default cx=1 cy=2 half=1 N=401",
         "pass"},
    };
    return entries;
}

}  // namespace osc
