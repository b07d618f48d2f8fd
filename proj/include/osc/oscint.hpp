#pragma once
#include <complex>
#include <functional>
#include <string>

#include "osc/profiles.hpp"
#include "osc/sublevel.hpp"

namespace osc {

enum class OscRoute { Direct, Coarea };

struct OscResult {
    std::complex<double> value;
    double err_estimate = 0.0;  // embedded-rule heuristic, not a rigorous bound
    OscRoute route = OscRoute::Coarea;
    double lambda = 0.0;
    int panel_count = 0;
};

// I(lambda) through the 1D coarea reduction:
//   int_0^l e^{i lambda s} a(s) J(s) ds.
// The integrable J singularity at s = 0 is absorbed by the substitution
// u = t(s), which equidistributes sublevel mass across the head panels.
OscResult oscint_coarea(const SublevelTable& table, const AmplitudeProfile& amp,
                        double lambda);

// Direct spatial quadrature. Radial phases integrate
//   int_0^{F^{-1}(l)} a(F(r)) e^{i lambda F(r)} n w_n r^{n-1} dr
// on phase-increment-limited panels.
OscResult oscint_direct(const RadialProfile& p, double l,
                        const AmplitudeProfile& amp, double lambda);

// Grid phases use a cellwise midpoint sum over S(l) with a Richardson
// error estimate at half resolution. Rejects |lambda|*l > 1e3: beyond
// that the grid cannot resolve the fringes and the coarea route applies.
OscResult oscint_direct(const GridPhase2D& p, double l,
                        const AmplitudeProfile& amp, double lambda);

// Level-set average of a general amplitude eta:
//   a(s) = (int_{f^{-1}(s)} eta/|grad f|) / (int_{f^{-1}(s)} 1/|grad f|).
double effective_amplitude(const GridPhase2D& p,
                           const std::function<double(double, double)>& eta,
                           double s);

// Relative difference between int eta e^{i lambda f} and
// int a(f) e^{i lambda f} with a from effective_amplitude.
double verify_levelset_average_identity(const GridPhase2D& p, double l,
                               const std::function<double(double, double)>& eta,
                               double lambda);

}  // namespace osc
