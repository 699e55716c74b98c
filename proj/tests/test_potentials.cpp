#include <cmath>
#include <random>

#include "doctest.h"
#include "tra/potentials.hpp"

using namespace tra::potentials;
using tra::basis::make_map;
using tra::basis::MapKind;

TEST_CASE("three-parameter potential reduces to the one-strength form") {
    // with VR = 0:  V0 + V1 (1 - 2 e^{-lx}) = 2 V1 (gamma - e^{-lx}),
    // gamma = (V0+V1)/(2 V1); so the deformed form carries strength -2 V1
    double v0 = -1.0, v1 = 2.5, lambda = 1.3;
    double gamma = (v0 + v1) / (2.0 * v1);
    auto full = make_short_range({v0, v1, 0.0, lambda});
    auto deformed = make_short_range_deformed(-2.0 * v1, gamma, lambda);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> xs(0.05, 8.0);
    for (int i = 0; i < 50; ++i) {
        double x = xs(rng);
        double a = potential_eval(full, x);
        double b = potential_eval(deformed, x);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("deformed-form zero crossing and extremum") {
    double gamma = 0.35, lambda = 0.9;
    auto pot = make_short_range_deformed(1.7, gamma, lambda);
    double x0 = deformed_zero_crossing(gamma, lambda);
    CHECK(std::abs(potential_eval(pot, x0)) < 1e-13);

    double x1 = deformed_extremum(gamma, lambda);
    double h = 1e-5;
    double deriv = (potential_eval(pot, x1 + h) - potential_eval(pot, x1 - h)) / (2.0 * h);
    CHECK(std::abs(deriv) < 1e-6);
}

TEST_CASE("transformed potential is the pull-back") {
    auto pot = make_short_range({-3.0, 5.0, 1.25, 1.0});
    auto map = make_map(MapKind::ShiftedExp, 1.0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ys(-0.99, 0.99);
    for (int i = 0; i < 50; ++i) {
        double y = ys(rng);
        double x = tra::basis::map_invert(map, y);
        double vy = transformed_potential(pot, map, y);
        double vx = potential_eval(pot, x);
        CHECK(std::abs(vy - vx) <= 1e-12 * std::max(1.0, std::abs(vx)));
    }
    CHECK_THROWS_AS(transformed_potential(pot, map, -1.0), std::domain_error);
}

TEST_CASE("oscillator is linear in the transformed coordinate") {
    PotentialSpec osc{"spherical_oscillator", {{"w4", 2.0}}, 0.0,
                      std::numeric_limits<double>::infinity(), ""};
    auto map = make_map(MapKind::Quadratic, 1.0);
    for (double y : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(transformed_potential(osc, map, y) == doctest::Approx(y).epsilon(1e-13));
    }
}

TEST_CASE("potential grids") {
    auto pot = make_short_range(ShortRangeParams::from_u(-2.0, -5.0, 3.0, 1.0));
    auto grid = potential_grid(pot, 0.1, 5.0, 200);
    REQUIRE(grid.size() == 200);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i].x > grid[i - 1].x);

    auto two = potential_grid(pot, 0.5, 1.5, 2);
    REQUIRE(two.size() == 2);
    CHECK(two.front().x == doctest::Approx(0.5));
    CHECK(two.back().x == doctest::Approx(1.5));

    CHECK_THROWS_AS(potential_grid(pot, -1.0, 2.0, 10), std::domain_error);
}

TEST_CASE("short-range decay") {
    auto pot = make_short_range(ShortRangeParams::from_u(-6.0, 10.0, 2.5, 1.0));
    double lambda = 1.0, v1 = pot.param("v1");
    double x = 20.0 / lambda;
    CHECK(std::abs(potential_eval(pot, x)) * std::exp(0.5 * lambda * x) < 1e-3 * std::abs(v1));
}

TEST_CASE("singularity and domain errors") {
    auto pot = make_short_range({-3.0, 5.0, 1.25, 1.0});
    CHECK_THROWS_AS(potential_eval(pot, 0.0), std::domain_error);
    CHECK_THROWS_AS(potential_eval(pot, -1.0), std::domain_error);
    CHECK_THROWS_AS(make_short_range({1.0, 1.0, -0.5, 1.0}), std::domain_error);
}

TEST_CASE("catalog entries evaluate finitely on their domains") {
    auto entries = catalog(1.0, 2.0, 1.5, 1.0);
    CHECK(entries.size() == 11);
    for (const auto& e : entries) {
        double lo = std::isinf(e.spec.x_lo) ? -6.0 : e.spec.x_lo;
        double hi = std::isinf(e.spec.x_hi) ? 6.0 : e.spec.x_hi;
        double pad = 0.01 * (hi - lo);
        for (int i = 0; i < 100; ++i) {
            double x = lo + pad + (hi - lo - 2.0 * pad) * i / 99.0;
            CHECK(std::isfinite(potential_eval(e.spec, x)));
        }
    }
    // the trigonometric Scarf row records its grid mismatch
    bool flagged = false;
    for (const auto& e : entries)
        if (e.spec.name == "trig_scarf" && !e.notes.empty()) flagged = true;
    CHECK(flagged);
}

TEST_CASE("dimensionless parameter round trip") {
    auto p = ShortRangeParams::from_u(-6.0, 10.0, 2.5, 2.0);
    CHECK(p.u0() == doctest::Approx(-6.0));
    CHECK(p.u1() == doctest::Approx(10.0));
    CHECK(p.ur() == doctest::Approx(2.5));
    CHECK(p.v0 == doctest::Approx(-12.0));
}
