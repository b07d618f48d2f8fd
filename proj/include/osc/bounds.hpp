#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "osc/oscint.hpp"
#include "osc/rearrange.hpp"
#include "osc/sublevel.hpp"

namespace osc {

struct LedgerEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs; negative means the inequality failed
};

struct BoundReport {
    double lambda = 0.0;
    bool in_range = false;      // w_n^{-1/n}/|lambda| <= l
    double I_abs = 0.0;
    double I_re = 0.0, I_im = 0.0;
    double I_err = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double alpha = 0.0;
    double eps0 = 0.0;
    std::string error;          // per-lambda failure, sweep continues
    std::vector<LedgerEntry> ledger;
};

struct AlphaResult {
    double alpha = 0.0;
    double eps0 = 0.0;
    double residual = 0.0;  // relative defect of t(alpha T^{-1}(alpha)) = (|lambda| alpha)^{-n}
};

struct DecayFit {
    double delta = 0.0;  // fitted decay exponent of |I(lambda)|
    double A = 0.0;      // prefactor with |I| <= A lambda^{-delta} on the grid
};

struct Prop1Report {
    double delta = 0.0;
    double A = 0.0;
    double worst_C = 0.0;  // max of band-measure/(A eps^delta); reported, never asserted
    double worst_c = 0.0;
    double worst_eps = 0.0;
};

// RHS = 5n (||a||_inf + ||a'||_1) t(w_n^{-1/n}/|lambda|).
// Throws std::domain_error when lambda is too small for the table.
double theorem_rhs(const SublevelTable& table, const AmplitudeProfile& amp, double lambda);

// alpha = |lambda|^{-1} t(w_n^{-1/n}/|lambda|)^{-1/n}, with the split height
// eps0 = alpha T^{-1}(alpha) recovered through the T machinery for n >= 2
// and by direct inversion of t for n = 1. The defining residual is
// post-verified to 1e-8 relative.
AlphaResult solve_alpha(const SublevelTable& table, const TFunction* tf, double lambda);

// Numerical evaluation of the proof-chain inequalities at the selected
// (alpha, eps0). The T-dependent rows are emitted only for n >= 2.
std::vector<LedgerEntry> proof_ledger(const SublevelTable& table,
                                      const RearrangedPhase& rearranged,
                                      const TFunction* tf,
                                      const AmplitudeProfile& amp, double lambda);

std::vector<double> log_lambda_grid(double lo, double hi, int count);

// Per-lambda bound reports; quadrature failures are recorded and the sweep
// continues. jobs > 1 fans lambdas out to a worker pool; output is
// identical to the serial sweep.
std::vector<BoundReport> verify_bound_sweep(const SublevelTable& table,
                                            const AmplitudeProfile& amp,
                                            const std::vector<double>& lambdas,
                                            bool with_ledger = false, int jobs = 1);

// Least-squares fit of log|I| against log lambda using the upper envelope
// over half-decade windows (raw regression is poisoned by the genuine
// zeros of |I|).
DecayFit fit_decay_exponent(const std::vector<BoundReport>& reports);

Prop1Report proposition1_check(const SublevelTable& table, double delta, double A,
                               const std::vector<double>& c_grid,
                               const std::vector<double>& eps_grid);

// sup/inf over the grid of |I(lambda)|/t(1/|lambda|) with a == 1; the
// non-uniformity witness for assumption-failing phases.
double nonuniformity_spread(const SublevelTable& table, const std::vector<double>& lambdas);

void write_sweep_csv(std::ostream& os, const std::vector<BoundReport>& reports);
void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports);

}  // namespace osc
