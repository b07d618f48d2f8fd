#pragma once
#include <array>
#include <cmath>
#include <complex>

namespace osc {

namespace detail {

constexpr std::array<double, 7> kGL7X = {
    -9.49107912342758486e-01, -7.41531185599394460e-01, -4.05845151377397184e-01,
    0.0,
    4.05845151377397184e-01, 7.41531185599394460e-01, 9.49107912342758486e-01};
constexpr std::array<double, 7> kGL7W = {
    1.29484966168870647e-01, 2.79705391489276589e-01, 3.81830050505118312e-01,
    4.17959183673468959e-01,
    3.81830050505118312e-01, 2.79705391489276589e-01, 1.29484966168870647e-01};

constexpr std::array<double, 15> kGL15X = {
    -9.87992518020485377e-01, -9.37273392400705951e-01, -8.48206583410427206e-01,
    -7.24417731360170070e-01, -5.70972172608538830e-01, -3.94151347077563385e-01,
    -2.01194093997434514e-01, 0.0,
    2.01194093997434514e-01, 3.94151347077563385e-01, 5.70972172608538830e-01,
    7.24417731360170070e-01, 8.48206583410427206e-01, 9.37273392400705951e-01,
    9.87992518020485377e-01};
constexpr std::array<double, 15> kGL15W = {
    3.07532419961186465e-02, 7.03660474881080689e-02, 1.07159220467171773e-01,
    1.39570677926153908e-01, 1.66269205816993781e-01, 1.86161000015561878e-01,
    1.98431485327111246e-01, 2.02578241925560898e-01, 1.98431485327111246e-01,
    1.86161000015561878e-01, 1.66269205816993781e-01, 1.39570677926153908e-01,
    1.07159220467171773e-01, 7.03660474881080689e-02, 3.07532419961186465e-02};

}  // namespace detail

// Result of a panel rule: 15-point value together with an embedded
// 7-point difference used as an error heuristic.
template <class T>
struct PanelResult {
    T value{};
    double err = 0.0;
};

// Gauss-Legendre 15/7 on a single panel [a, b].
template <class F>
auto gl_panel(F&& f, double a, double b) {
    using T = decltype(f(a));
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T v15{}, v7{};
    for (int i = 0; i < 15; ++i)
        v15 += detail::kGL15W[i] * f(mid + half * detail::kGL15X[i]);
    for (int i = 0; i < 7; ++i)
        v7 += detail::kGL7W[i] * f(mid + half * detail::kGL7X[i]);
    v15 *= half;
    v7 *= half;
    return PanelResult<T>{v15, std::abs(v15 - v7)};
}

// Fixed subdivision of [a, b] into n equal panels.
template <class F>
auto gl_panels(F&& f, double a, double b, int n) {
    using T = decltype(f(a));
    PanelResult<T> acc;
    const double w = (b - a) / n;
    for (int k = 0; k < n; ++k) {
        auto p = gl_panel(f, a + k * w, a + (k + 1) * w);
        acc.value += p.value;
        acc.err += p.err;
    }
    return acc;
}

// Geometric subdivision of (0, b] towards 0, for integrands with an
// integrable endpoint singularity. Panels shrink by `ratio` down to
// b*ratio^depth; the neglected stub [0, b*ratio^depth] is not evaluated.
template <class F>
auto gl_panels_geometric(F&& f, double b, int depth, double ratio = 0.5) {
    using T = decltype(f(b));
    PanelResult<T> acc;
    double hi = b;
    for (int k = 0; k < depth; ++k) {
        double lo = hi * ratio;
        auto p = gl_panel(f, lo, hi);
        acc.value += p.value;
        acc.err += p.err;
        hi = lo;
    }
    return acc;
}

}  // namespace osc
