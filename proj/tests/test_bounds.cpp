#include <doctest.h>

#include <cmath>
#include <sstream>

#include "osc/bounds.hpp"

using namespace osc;

namespace {

struct Lab {
    RadialProfile p;
    SublevelTable tab;
    RearrangedPhase r;
    TFunction tf;

    Lab(RadialProfile prof, double l)
        : p(std::move(prof)),
          tab(build_sublevel_table_radial(p, l)),
          r(build_rearrangement(tab)),
          tf(build_T(tab)) {}
};

}  // namespace

TEST_CASE("theorem RHS closed form for F=r^2, n=2, a == 1: 10 sqrt(pi)/lambda") {
    RadialProfile p = make_power_profile(2.0, 1.2, 2);
    SublevelTable tab = build_sublevel_table_radial(p, 1.0);
    AmplitudeProfile one = make_constant_amplitude(1.0, 1.0);
    for (double lam : {10.0, 100.0, 1000.0})
        CHECK(theorem_rhs(tab, one, lam) ==
              doctest::Approx(10.0 * std::sqrt(M_PI) / lam).epsilon(1e-13));
    CHECK_THROWS_AS(theorem_rhs(tab, one, 0.1), std::domain_error);
}

TEST_CASE("alpha and eps0 closed forms for F=r^2, n=2") {
    Lab lab(make_power_profile(2.0, 1.2, 2), 1.0);
    for (double lam : {10.0, 100.0, 1000.0}) {
        AlphaResult a = solve_alpha(lab.tab, &lab.tf, lam);
        CHECK(a.alpha ==
              doctest::Approx(std::pow(lam, -0.5) * std::pow(M_PI, -0.25)).epsilon(1e-9));
        CHECK(a.eps0 == doctest::Approx(1.0 / (lam * std::sqrt(M_PI))).epsilon(1e-9));
        CHECK(a.residual <= 1e-8);
    }
}

TEST_CASE("alpha in one dimension bypasses T") {
    RadialProfile p = make_power_profile(2.0, 1.2, 1);
    SublevelTable tab = build_sublevel_table_radial(p, 1.0);
    // t(eps) = 2 sqrt(eps); alpha = 1/(lambda t(1/(2 lambda))) = sqrt(lambda/2)/ ... check residual only
    AlphaResult a = solve_alpha(tab, nullptr, 50.0);
    CHECK(a.residual <= 1e-8);
    CHECK(tab.t(a.eps0) ==
          doctest::Approx(1.0 / (std::abs(50.0) * a.alpha)).epsilon(1e-8));
}

TEST_CASE("proof ledger margins are non-negative on passing phases") {
    Lab lab(make_power_profile(3.0, 1.0, 2), 0.9);
    AmplitudeProfile lin = make_linear_amplitude(0.9);
    for (double lam : {10.0, 100.0, 2000.0}) {
        auto ledger = proof_ledger(lab.tab, lab.r, &lab.tf, lin, lam);
        CHECK(ledger.size() >= 6);
        for (const auto& e : ledger) {
            double scale = std::max(std::abs(e.lhs), std::abs(e.rhs));
            CHECK(e.margin >= -1e-8 * scale);
        }
    }
}

TEST_CASE("log lambda grid") {
    auto g = log_lambda_grid(10.0, 1000.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.front() == doctest::Approx(10.0));
    CHECK(g.back() == doctest::Approx(1000.0));
    CHECK(g[2] == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS(log_lambda_grid(-1.0, 10.0, 5));
}

TEST_CASE("parallel sweep equals the serial sweep bit for bit") {
    RadialProfile p = make_power_profile(2.0, 1.2, 2);
    SublevelTable tab = build_sublevel_table_radial(p, 1.0);
    AmplitudeProfile one = make_constant_amplitude(1.0, 1.0);
    auto lambdas = log_lambda_grid(10.0, 1e4, 25);
    auto serial = verify_bound_sweep(tab, one, lambdas, true, 1);
    auto parallel = verify_bound_sweep(tab, one, lambdas, true, 4);
    REQUIRE(serial.size() == parallel.size());
    for (size_t k = 0; k < serial.size(); ++k) {
        CHECK(serial[k].I_re == parallel[k].I_re);
        CHECK(serial[k].I_im == parallel[k].I_im);
        CHECK(serial[k].ratio == parallel[k].ratio);
        CHECK(serial[k].alpha == parallel[k].alpha);
    }
    // all theorem ratios comfortably below 1 for this phase
    for (const auto& rep : serial) {
        CHECK(rep.error.empty());
        CHECK(rep.in_range);
        CHECK(rep.ratio <= 1.0 + 1e-6);
    }
}

TEST_CASE("decay exponent fit recovers n/m") {
    RadialProfile p = make_power_profile(2.0, 1.2, 2);
    SublevelTable tab = build_sublevel_table_radial(p, 1.0);
    AmplitudeProfile one = make_constant_amplitude(1.0, 1.0);
    auto reports = verify_bound_sweep(tab, one, log_lambda_grid(100.0, 1e4, 60), false, 1);
    DecayFit fit = fit_decay_exponent(reports);
    CHECK(fit.delta == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.A > 0.0);
    CHECK_THROWS(fit_decay_exponent({}));
}

TEST_CASE("proposition-1 band constants for f = x^2 in one dimension") {
    RadialProfile p = make_power_profile(2.0, 1.0, 1);
    double l = choose_l(p);
    SublevelTable tab = build_sublevel_table_radial(p, l);
    // t(eps) = 2 sqrt(eps): band at c = 0 is exactly 2 sqrt(eps)
    Prop1Report rep =
        proposition1_check(tab, 0.5, 2.0, {0.0, 0.3, 0.6}, {1e-4, 1e-3, 1e-2, 0.05});
    CHECK(std::isfinite(rep.worst_C));
    CHECK(rep.worst_C <= 1.0 + 1e-9);  // A = 2 matches the band constant exactly
    for (double eps : {1e-4, 1e-3, 1e-2}) {
        double band = tab.t(std::min(eps, l)) - tab.t(0.0);
        CHECK(band == doctest::Approx(2.0 * std::sqrt(eps)).epsilon(1e-9));
    }
    CHECK_THROWS(proposition1_check(tab, 1.5, 2.0, {0.0}, {0.1}));
}

TEST_CASE("non-uniformity spread of the staircase witness") {
    RadialProfile st = make_staircase_profile({1.0, 8.0}, {0.5}, 0.05, 1.0, 2);
    SublevelTable tab = build_sublevel_table_radial(st, choose_l(st));
    double spread = nonuniformity_spread(tab, log_lambda_grid(10.0, 1e4, 25));
    CHECK(spread >= 5.0);
}

TEST_CASE("sweep CSV serialization") {
    RadialProfile p = make_power_profile(2.0, 1.2, 2);
    SublevelTable tab = build_sublevel_table_radial(p, 1.0);
    AmplitudeProfile one = make_constant_amplitude(1.0, 1.0);
    auto reports = verify_bound_sweep(tab, one, log_lambda_grid(10.0, 100.0, 3), false, 1);
    std::ostringstream csv, json;
    write_sweep_csv(csv, reports);
    write_reports_json(json, reports);
    std::istringstream is(csv.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "lambda,re,im,abs,err,route,rhs,ratio,alpha,eps0,in_range");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
    CHECK(json.str().find("\"lambda\": 10") != std::string::npos);
}
