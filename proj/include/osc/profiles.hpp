#pragma once
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace osc {

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

enum class Classification { Pass, Boundary, Fail };

std::string to_string(Classification c);

// Radial convex phase f(x) = F(|x|) on the ball of radius R in R^n,
// normalized so F(0) = 0. Derivatives are carried as exact callables;
// finite differencing is only used to cross-check them (the radial
// concavity test is derivative-sensitive near 0).
struct RadialProfile {
    std::function<double(double)> F;
    std::function<double(double)> dF;
    std::function<double(double)> d2F;
    std::function<double(double)> F_inv;  // optional closed form
    double R = 0.0;
    int dim_n = 1;
    bool smooth_at_origin = false;
    std::string name;
    Classification classification = Classification::Pass;

    // F^{-1}(eps), closed form when available, bracketed root-finding otherwise.
    double invert(double eps) const;
};

// Uniform N x N sampling of a 2D convex phase on an axis-aligned rectangle,
// with gradient and Hessian samples.
struct GridPhase2D {
    double x0 = 0, y0 = 0;   // lower-left corner
    double hx = 0, hy = 0;   // grid spacing
    int nx = 0, ny = 0;      // sample counts per axis
    std::vector<double> f;   // row-major, index j*nx + i
    std::vector<double> gx, gy;
    std::vector<double> hxx, hxy, hyy;
    int min_i = 0, min_j = 0;
    std::string name;

    double x_at(int i) const { return x0 + i * hx; }
    double y_at(int j) const { return y0 + j * hy; }
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * nx + i; }

    // bilinear interpolation of any of the sample arrays
    double interp(const std::vector<double>& v, double x, double y) const;
    double f_at(double x, double y) const { return interp(f, x, y); }
};

// Amplitude a(s) on [0, l] with its derivative and norms.
struct AmplitudeProfile {
    std::function<double(double)> a;
    std::function<double(double)> da;
    double sup_norm = 0.0;   // ||a||_inf on [0, l]
    double deriv_l1 = 0.0;   // ||a'||_1 on [0, l]
    bool monotone = false;
    double l = 0.0;
    std::string name;
};

AmplitudeProfile make_constant_amplitude(double c, double l);
AmplitudeProfile make_linear_amplitude(double l);  // a(s) = 1 - s/l

// --- built-in phase families -------------------------------------------

// F(r) = r^m. Rejects m < 1. Geometric-assumption classification follows
// the radial criterion: pass iff m >= n, boundary at m == n.
RadialProfile make_power_profile(double m, double R, int n);

// F(r) = exp(-1/r), vanishing to infinite order at the origin. Convex only
// on r <= 1/2 and assumption-passing only on r <= 1/(n+1); the builder
// classifies accordingly. Closed-form sublevel measure
// t(eps) = w_n (log(1/eps))^{-n} is available through F_inv.
RadialProfile make_flat_profile(double R, int n);

// Piecewise-linear growth of F' between consecutive slopes, blended with a
// C^1 cubic transition of width smoothing_width around each breakpoint, so
// F is C^2. Slopes must be positive and non-decreasing. Pass
// smoothing_width <= 0 to get the default 0.05 * (minimal breakpoint gap).
RadialProfile make_staircase_profile(std::vector<double> slopes,
                                     std::vector<double> breakpoints,
                                     double smoothing_width, double R, int n);

// f(x, y) = cx*x^2 + cy*y^2 sampled on [-half, half]^2.
GridPhase2D make_quadratic_grid(double cx, double cy, double half, int N = 401);

// General grid sampling from callables.
GridPhase2D make_grid_phase(const std::function<double(double, double)>& f,
                            const std::function<void(double, double, double&, double&)>& grad,
                            const std::function<void(double, double, double&, double&, double&)>& hess,
                            double x0, double y0, double x1, double y1, int N);

// --- validation ---------------------------------------------------------

struct CheckResult {
    std::string check;
    bool pass = false;
    double worst = 0.0;      // worst offending value
    double worst_at = 0.0;   // sample location of the worst offender
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    bool usable(bool allow_nonsmooth_origin) const;
};

ValidationReport validate_phase(const RadialProfile& p);
ValidationReport validate_phase(const GridPhase2D& p);

// --- catalog -------------------------------------------------------------

struct CatalogEntry {
    std::string name;
    std::string parameter_schema;
    std::string expected_verdict;
};

const std::vector<CatalogEntry>& phase_catalog();

}  // namespace osc
