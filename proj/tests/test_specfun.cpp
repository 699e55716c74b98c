#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "tra/specfun.hpp"

using namespace tra::specfun;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("log_gamma at real points") {
    CHECK(std::abs(log_gamma({1.0, 0.0})) < 1e-14);
    CHECK(log_gamma({5.0, 0.0}).real() == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(std::abs(log_gamma({5.0, 0.0}).imag()) < 1e-14);
    // half-integer reference
    CHECK(std::exp(log_gamma({0.5, 0.0}).real()) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("log_gamma modulus identity on the critical line") {
    // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
    for (double t = 0.0; t <= 10.0; t += 0.37) {
        double lhs = std::pow(abs_gamma({0.5, t}), 2);
        CHECK(lhs * std::cosh(kPi * t) / kPi == doctest::Approx(1.0).epsilon(1e-10));
    }
    double v = std::pow(abs_gamma({0.5, 1.0}), 2);
    CHECK(v == doctest::Approx(kPi / std::cosh(kPi)).epsilon(1e-12));
}

TEST_CASE("log_gamma satisfies the factorial recurrence") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(0.1, 30.0);
    for (int i = 0; i < 200; ++i) {
        double x = dist(rng);
        double lhs = std::exp(log_gamma({x + 1.0, 0.0}).real());
        double rhs = x * std::exp(log_gamma({x, 0.0}).real());
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("log_gamma recurrence holds off the real axis") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(0.2, 8.0), im(-6.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        Complex z{re(rng), im(rng)};
        Complex lhs = std::exp(log_gamma(z + 1.0));
        Complex rhs = z * std::exp(log_gamma(z));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("log_gamma pole detection") {
    CHECK_THROWS_AS(log_gamma({0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(log_gamma({-3.0, 0.0}), std::domain_error);
    CHECK_NOTHROW(log_gamma({-3.5, 0.0}));
    CHECK_NOTHROW(log_gamma({-3.0, 0.5}));
}

TEST_CASE("reflection region agrees with the recurrence route") {
    // Gamma(-1.5) via Gamma(0.5) / (-1.5 * -0.5)
    double g = std::exp(log_gamma({-1.5, 0.0}).real());
    double sign = std::cos(log_gamma({-1.5, 0.0}).imag());
    double expected = std::sqrt(kPi) / ((-1.5) * (-0.5));
    CHECK(g * sign == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(2.7, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == doctest::Approx(360.0));
    CHECK(pochhammer(-2.0, 4) == 0.0);
    CHECK_THROWS_AS(pochhammer(1e300, 4), std::range_error);
    Complex c = pochhammer(Complex{1.0, 1.0}, 2);
    CHECK(c.real() == doctest::Approx(1.0));  // (1+i)(2+i) = 1+3i
    CHECK(c.imag() == doctest::Approx(3.0));
}

TEST_CASE("terminating hypergeometric sums") {
    // n = 0 series is 1
    CHECK(hyp_terminating({-0.0, 2.3}, {1.7}, 0.9, 0) == doctest::Approx(1.0));
    // 1F1(-1; nu+1; y) at nu=2, y=1 -> 1 - 1/3
    CHECK(hyp_terminating({-1.0}, {3.0}, 1.0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // 2F1(-1, mu+nu+2; mu+1; (1-y)/2) at mu=2, nu=1, y=0 -> 1/6
    CHECK(hyp_terminating({-1.0, 5.0}, {3.0}, 0.5, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("hyp_terminating with real inputs has exactly zero imaginary part") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    for (int n = 0; n <= 12; ++n) {
        std::vector<Complex> num{Complex(-n, 0.0), Complex(dist(rng), 0.0)};
        std::vector<Complex> den{Complex(dist(rng) + 1.0, 0.0)};
        Complex v = hyp_terminating(num, den, Complex(dist(rng), 0.0), n);
        CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("hyp_terminating error paths") {
    CHECK_THROWS_AS(hyp_terminating({-2.0, 1.0}, {-1.0}, 0.5, 2), std::domain_error);
    CHECK_THROWS_AS(hyp_terminating({-3.0}, {1.0}, 0.5, 2), std::invalid_argument);
}
