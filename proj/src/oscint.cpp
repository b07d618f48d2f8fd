#include "osc/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "osc/interp.hpp"
#include "osc/marching.hpp"
#include "osc/quadrature.hpp"

namespace osc {

namespace {

using cplx = std::complex<double>;

cplx unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

void assert_trivial_bound(const OscResult& res, const SublevelTable& tab,
                          const AmplitudeProfile& amp) {
    double bound = amp.sup_norm * tab.t(tab.l);
    if (std::abs(res.value) > bound * (1.0 + 1e-9) + res.err_estimate)
        throw std::runtime_error("oscint: |I| exceeds the trivial bound ||a||_inf t(l)");
}

}  // namespace

OscResult oscint_coarea(const SublevelTable& tab, const AmplitudeProfile& amp,
                        double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("oscint_coarea: lambda must be non-zero");
    const double alam = std::abs(lambda);
    const double l = tab.l;

    OscResult res;
    res.route = OscRoute::Coarea;
    res.lambda = lambda;

    // head: phase increment at most pi/2, integrate in u = t(s)
    const double s_c = std::min(l, 0.5 * M_PI / alam);
    const double U = tab.t(s_c);
    const int head_depth = 45;
    auto head = gl_panels_geometric(
        [&](double u) {
            double s = tab.t_inv(u);
            return unit_phase(lambda * s) * amp.a(s);
        },
        U, head_depth);
    res.value = head.value;
    res.err_estimate = head.err + amp.sup_norm * U * std::pow(0.5, head_depth);
    res.panel_count = head_depth;

    // tail: direct s-integration on phase-limited panels
    if (s_c < l) {
        int n_tail = static_cast<int>(std::ceil((l - s_c) * alam / (0.5 * M_PI)));
        auto tail = gl_panels(
            [&](double s) { return unit_phase(lambda * s) * amp.a(s) * tab.J(s); },
            s_c, l, n_tail);
        res.value += tail.value;
        res.err_estimate += tail.err;
        res.panel_count += n_tail;
    }
    res.err_estimate += 1e-15 * amp.sup_norm * tab.t(l);
    assert_trivial_bound(res, tab, amp);
    return res;
}

OscResult oscint_direct(const RadialProfile& p, double l,
                        const AmplitudeProfile& amp, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("oscint_direct: lambda must be non-zero");
    const double alam = std::abs(lambda);
    const int n = p.dim_n;
    const double wn = unit_ball_volume(n);
    const double r_l = p.invert(l);

    // panel edges where the phase advances by pi/2, further split so no
    // panel exceeds r_l/16 (resolves a(F) and r^{n-1} at low frequency)
    std::vector<double> edges{0.0};
    const double max_w = r_l / 16.0;
    int n_phase = static_cast<int>(std::ceil(l * alam / (0.5 * M_PI)));
    for (int k = 1; k <= n_phase; ++k) {
        double s = std::min(l, k * 0.5 * M_PI / alam);
        double r = p.invert(s);
        while (r - edges.back() > max_w) edges.push_back(edges.back() + max_w);
        if (r > edges.back()) edges.push_back(r);
    }
    while (r_l - edges.back() > 0.5 * max_w) edges.push_back(edges.back() + max_w);
    edges.back() = r_l;

    OscResult res;
    res.route = OscRoute::Direct;
    res.lambda = lambda;
    auto integrand = [&](double r) {
        double s = p.F(r);
        return unit_phase(lambda * s) * amp.a(s) * (n * wn * std::pow(r, n - 1.0));
    };
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
        auto panel = gl_panel(integrand, edges[k], edges[k + 1]);
        res.value += panel.value;
        res.err_estimate += panel.err;
        ++res.panel_count;
    }
    res.err_estimate += 1e-15 * amp.sup_norm * wn * std::pow(r_l, n);
    double bound = amp.sup_norm * wn * std::pow(r_l, n);
    if (std::abs(res.value) > bound * (1.0 + 1e-9) + res.err_estimate)
        throw std::runtime_error("oscint: |I| exceeds the trivial bound ||a||_inf t(l)");
    return res;
}

namespace {

// midpoint sum of phi(f) over {f <= l} using every `stride`-th sample
cplx grid_midpoint_sum(const GridPhase2D& g, double l, double lambda,
                       const std::function<double(double)>& a, int stride,
                       int* used_cells, int* boundary_cells) {
    cplx acc = 0.0;
    const double cell = g.hx * g.hy * stride * stride;
    for (int j = 0; j + stride < g.ny; j += stride) {
        for (int i = 0; i + stride < g.nx; i += stride) {
            double fc = 0.25 * (g.f[g.idx(i, j)] + g.f[g.idx(i + stride, j)] +
                                g.f[g.idx(i, j + stride)] + g.f[g.idx(i + stride, j + stride)]);
            if (fc > l) continue;
            acc += unit_phase(lambda * fc) * a(fc) * cell;
            if (used_cells) ++*used_cells;
            if (boundary_cells) {
                double fmax = std::max({g.f[g.idx(i, j)], g.f[g.idx(i + stride, j)],
                                        g.f[g.idx(i, j + stride)],
                                        g.f[g.idx(i + stride, j + stride)]});
                if (fmax > l) ++*boundary_cells;
            }
        }
    }
    return acc;
}

}  // namespace

OscResult oscint_direct(const GridPhase2D& p, double l,
                        const AmplitudeProfile& amp, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("oscint_direct: lambda must be non-zero");
    if (std::abs(lambda) * l > 1e3)
        throw std::invalid_argument(
            "oscint_direct(grid): |lambda|*l > 1e3 unresolvable at grid scale; use the coarea route");
    OscResult res;
    res.route = OscRoute::Direct;
    res.lambda = lambda;
    int used = 0, boundary = 0;
    cplx fine = grid_midpoint_sum(p, l, lambda, amp.a, 1, &used, &boundary);
    cplx coarse = grid_midpoint_sum(p, l, lambda, amp.a, 2, nullptr, nullptr);
    res.value = fine;
    res.panel_count = used;
    res.err_estimate = std::abs(fine - coarse) +
                       amp.sup_norm * boundary * p.hx * p.hy;
    double bound = amp.sup_norm * (used + boundary) * p.hx * p.hy;
    if (std::abs(res.value) > bound * (1.0 + 1e-9) + res.err_estimate)
        throw std::runtime_error("oscint: |I| exceeds the trivial bound ||a||_inf t(l)");
    return res;
}

double effective_amplitude(const GridPhase2D& p,
                           const std::function<double(double, double)>& eta,
                           double s) {
    auto inv_grad = [&](double x, double y) {
        return 1.0 / std::hypot(p.interp(p.gx, x, y), p.interp(p.gy, x, y));
    };
    double den = contour_integral(p, s, inv_grad);
    if (den <= 0.0)
        throw std::invalid_argument("effective_amplitude: degenerate contour at this height");
    double num = contour_integral(p, s, [&](double x, double y) {
        return eta(x, y) * inv_grad(x, y);
    });
    return num / den;
}

double verify_levelset_average_identity(const GridPhase2D& p, double l,
                               const std::function<double(double, double)>& eta,
                               double lambda) {
    // spatial sum of eta e^{i lambda f}
    cplx direct = 0.0;
    const double cell = p.hx * p.hy;
    for (int j = 0; j + 1 < p.ny; ++j) {
        for (int i = 0; i + 1 < p.nx; ++i) {
            double fc = 0.25 * (p.f[p.idx(i, j)] + p.f[p.idx(i + 1, j)] +
                                p.f[p.idx(i, j + 1)] + p.f[p.idx(i + 1, j + 1)]);
            if (fc > l) continue;
            double xc = p.x_at(i) + 0.5 * p.hx, yc = p.y_at(j) + 0.5 * p.hy;
            direct += unit_phase(lambda * fc) * eta(xc, yc) * cell;
        }
    }

    // level-set average a(s) tabulated over the resolvable height range
    const int M = 200;
    std::vector<double> s_nodes, a_vals;
    for (int k = 0; k <= M; ++k) {
        double s = l * (0.001 + 0.998 * k / M);
        s_nodes.push_back(s);
        a_vals.push_back(effective_amplitude(p, eta, s));
    }
    MonotoneCubic a_interp(s_nodes, a_vals);
    auto a_of = [&](double s) {
        return a_interp(std::clamp(s, s_nodes.front(), s_nodes.back()));
    };

    cplx averaged = 0.0;
    for (int j = 0; j + 1 < p.ny; ++j) {
        for (int i = 0; i + 1 < p.nx; ++i) {
            double fc = 0.25 * (p.f[p.idx(i, j)] + p.f[p.idx(i + 1, j)] +
                                p.f[p.idx(i, j + 1)] + p.f[p.idx(i + 1, j + 1)]);
            if (fc > l) continue;
            averaged += unit_phase(lambda * fc) * a_of(fc) * cell;
        }
    }
    double scale = std::max(std::abs(direct), std::abs(averaged));
    if (scale == 0.0) return 0.0;
    return std::abs(direct - averaged) / scale;
}

}  // namespace osc
