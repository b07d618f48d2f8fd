#include <doctest.h>

#include <cmath>

#include "osc/profiles.hpp"

using namespace osc;

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-15));
}

TEST_CASE("power profile basics") {
    RadialProfile p = make_power_profile(2.0, 1.0, 2);
    CHECK(p.F(0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.dF(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.d2F(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.invert(0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.smooth_at_origin);
    CHECK(p.classification == Classification::Boundary);  // m == n

    CHECK_THROWS(make_power_profile(0.5, 1.0, 2));  // m < 1 rejected
}

TEST_CASE("power profile classification matches m vs n") {
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            RadialProfile p = make_power_profile(m, 1.0, n);
            Classification want = m > n   ? Classification::Pass
                                  : m == n ? Classification::Boundary
                                           : Classification::Fail;
            CHECK(p.classification == want);
        }
    }
}

TEST_CASE("flat profile") {
    RadialProfile p = make_flat_profile(0.45, 2);
    double r = 0.3;
    CHECK(p.F(r) == doctest::Approx(std::exp(-1.0 / r)).epsilon(1e-15));
    CHECK(p.invert(p.F(r)) == doctest::Approx(r).epsilon(1e-14));
    CHECK(p.classification == Classification::Fail);  // 0.45 > 1/3
    CHECK(make_flat_profile(0.3, 2).classification == Classification::Pass);
    // vanishing to infinite order: F and its derivatives tend to 0
    CHECK(p.F(1e-3) < 1e-300);
}

TEST_CASE("staircase profile is C^1-convex with exact antiderivative") {
    RadialProfile p = make_staircase_profile({1.0, 8.0}, {0.5}, 0.05, 1.0, 2);
    CHECK_FALSE(p.smooth_at_origin);
    CHECK(p.classification == Classification::Fail);
    CHECK(p.F(0.0) == 0.0);
    // F' positive and non-decreasing
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        double r = i / 100.0;
        double d = p.dF(r);
        CHECK(d > 0.0);
        CHECK(d >= prev - 1e-12);
        prev = d;
    }
    // F is the exact antiderivative of dF
    double acc = 0.0, h = 1e-5;
    for (double r = 0.5 * h; r < 0.8; r += h) acc += p.dF(r) * h;
    CHECK(p.F(0.8) == doctest::Approx(acc).epsilon(1e-6));
}

TEST_CASE("derivative consistency across the catalog profiles") {
    for (const RadialProfile& p : {make_power_profile(3.0, 1.0, 2),
                                   make_flat_profile(0.45, 2),
                                   make_staircase_profile({1.0, 8.0}, {0.5}, 0.05, 1.0, 2)}) {
        const double h = 1e-6 * p.R;
        for (int i = 1; i < 40; ++i) {
            double r = p.R * (0.02 + 0.95 * i / 40.0);
            double fd = (p.F(r + h) - p.F(r - h)) / (2.0 * h);
            CHECK(p.dF(r) == doctest::Approx(fd).epsilon(1e-6));
            double fd2 = (p.dF(r + h) - p.dF(r - h)) / (2.0 * h);
            CHECK(p.d2F(r) == doctest::Approx(fd2).epsilon(1e-4));
        }
    }
}

TEST_CASE("amplitude profiles") {
    AmplitudeProfile c = make_constant_amplitude(2.0, 1.0);
    CHECK(c.a(0.3) == 2.0);
    CHECK(c.sup_norm == 2.0);
    CHECK(c.deriv_l1 == 0.0);
    CHECK(c.monotone);

    AmplitudeProfile lin = make_linear_amplitude(2.0);
    CHECK(lin.a(0.0) == 1.0);
    CHECK(lin.a(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lin.sup_norm == 1.0);
    CHECK(lin.deriv_l1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lin.da(1.0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("quadratic grid phase") {
    GridPhase2D g = make_quadratic_grid(1.0, 2.0, 1.0, 201);
    // minimum normalized to zero at the center
    CHECK(g.f[g.idx(g.min_i, g.min_j)] == 0.0);
    CHECK(g.x_at(g.min_i) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.f_at(0.5, 0.25) == doctest::Approx(0.25 + 2.0 * 0.0625).epsilon(1e-4));
    CHECK(g.interp(g.gx, 0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.interp(g.gy, 0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.interp(g.hyy, 0.3, -0.2) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("validation reports") {
    ValidationReport ok = validate_phase(make_power_profile(2.0, 1.0, 2));
    CHECK(ok.all_pass());
    CHECK(ok.usable(false));

    ValidationReport stair =
        validate_phase(make_staircase_profile({1.0, 8.0}, {0.5}, 0.05, 1.0, 2));
    CHECK_FALSE(stair.usable(false));  // kink at the origin
    CHECK(stair.usable(true));

    ValidationReport grid = validate_phase(make_quadratic_grid(1.0, 2.0, 1.0, 201));
    CHECK(grid.all_pass());
}

TEST_CASE("catalog lists the built-in families") {
    const auto& cat = phase_catalog();
    std::vector<std::string> names;
    for (const auto& e : cat) names.push_back(e.name);
    for (const char* want : {"power", "flat", "staircase", "grid2d"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
}
