#include <cmath>
#include <random>

#include "doctest.h"
#include "tra/eigensolve.hpp"
#include "tra/potentials.hpp"
#include "tra/solver.hpp"
#include "tra/waveop.hpp"

using namespace tra;
using namespace tra::waveop;
using tra::orthopoly::make_jacobi;
using tra::orthopoly::make_laguerre;

TEST_CASE("position matrix coefficients") {
    // symmetric weight: diagonal vanishes
    auto y = position_matrix(make_jacobi(0.7, 0.7), 6);
    for (double d : y.d) CHECK(std::abs(d) < 1e-15);

    // entries coincide with the analytic C_n, D_n of the tridiagonal operator
    double mu = 1.0, nu = std::sqrt(11.0);
    auto op = assemble_short_range(-6.0, 10.0, 2.5, 1.0, mu, 8);
    auto ym = position_matrix(make_jacobi(mu, nu), 8);
    for (int k = 0; k < 8; ++k) CHECK(ym.d[k] == doctest::Approx(op.c_coeff(k)).epsilon(1e-14));
    for (int k = 0; k < 7; ++k) CHECK(ym.e[k] == doctest::Approx(op.d_coeff(k)).epsilon(1e-14));

    auto yl = position_matrix(make_laguerre(0.0), 2);
    CHECK(yl.d[0] == doctest::Approx(1.0));
    CHECK(yl.d[1] == doctest::Approx(3.0));
    CHECK(yl.e[0] == doctest::Approx(-1.0));
}

TEST_CASE("position matrix eigenvalues stay inside the weight support") {
    auto yj = position_matrix(make_jacobi(0.3, 1.9), 20);
    for (double v : eigensolve::eig_tridiag(yj, false).values) {
        CHECK(v > -1.0);
        CHECK(v < 1.0);
    }
    auto yl = position_matrix(make_laguerre(1.1), 20);
    for (double v : eigensolve::eig_tridiag(yl, false).values) CHECK(v > 0.0);
}

TEST_CASE("oscillator assembly") {
    // scale-dependent coupling with omega^4/lambda^2 = 1/2 decouples the matrix
    double omega = 1.0;
    double lambda = std::sqrt(2.0) * omega * omega;  // omega^4 / lambda^2 = 1/2
    auto osc = assemble_oscillator(omega, lambda, 0, 5, OscillatorCoupling::ScaleDependent);
    CHECK(osc.nu == doctest::Approx(0.5));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(osc.h.e[k]) < 1e-15);
    for (int k = 0; k < 5; ++k) CHECK(osc.h.d[k] == doctest::Approx(2.0 * k + osc.nu + 1.0));

    // single-entry case
    auto one = assemble_oscillator(2.0, 1.5, 0, 1, OscillatorCoupling::ScaleDependent);
    double w = std::pow(2.0, 4) / (1.5 * 1.5);
    CHECK(one.h.d[0] == doctest::Approx((one.nu + 1.0) * (0.5 + w)));
    CHECK(one.energy_scale == doctest::Approx(1.5 * 1.5));

    // scale-invariant coupling decouples exactly at lambda = omega
    auto rec = assemble_oscillator(1.3, 1.3, 2, 4);
    for (double e : rec.h.e) CHECK(std::abs(e) < 1e-15);
}

TEST_CASE("tridiagonal operator special cases") {
    // u1 = 0: diagonal, closed-form eigenvalues eps_n = -(n+(mu+nu+1)/2)^2 - u0
    auto op = assemble_short_range(-2.0, 0.0, 1.5, 1.0, 0.8, 6);
    auto j0 = op.at(0.0);
    for (double e : j0.e) CHECK(e == 0.0);
    for (int k = 0; k < 6; ++k) {
        double b = k + 0.5 * (0.8 + op.nu + 1.0);
        CHECK(j0.d[k] == doctest::Approx(b * b - 2.0));
    }

    // mu = nu kills C_n
    auto sym = assemble_short_range(0.0, 3.0, 2.0, 1.0, 3.0, 6);
    CHECK(sym.nu == doctest::Approx(3.0));
    for (int k = 0; k < 6; ++k) CHECK(std::abs(sym.c_coeff(k)) < 1e-15);

    // nu from the closure condition
    auto op2 = assemble_short_range(-6.0, 10.0, 2.5, 1.0, 1.0, 4);
    CHECK(op2.nu == doctest::Approx(std::sqrt(11.0)).epsilon(1e-14));

    CHECK_THROWS_AS(assemble_short_range(0.0, 1.0, -0.5, 1.0, 1.0, 4), std::domain_error);

    // C_n flips sign under mu <-> nu exchange away from the n=0 seed row
    auto a = assemble_short_range(0.0, 1.0, 2.0, 1.0, 1.3, 6);
    auto b = assemble_short_range(0.0, 1.0, 2.0, 1.0, a.nu, 6);
    (void)b;
    double nu_a = a.nu;
    auto swapped = ShortRangeWaveOp{0.0, 1.0, 2.0, 1.0, nu_a, 1.3, 6};
    for (int k = 1; k < 6; ++k)
        CHECK(a.c_coeff(k) == doctest::Approx(-swapped.c_coeff(k)).epsilon(1e-13));
    for (int k = 0; k < 5; ++k)
        CHECK(a.d_coeff(k) == doctest::Approx(swapped.d_coeff(k)).epsilon(1e-13));
}

TEST_CASE("off-diagonal coefficients stay positive on the parameter domain") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> par(-0.9, 3.0);
    for (int rep = 0; rep < 30; ++rep) {
        double mu = par(rng);
        double ur = 0.25 * (std::pow(par(rng) + 1.0, 2) - 1.0);  // nu > 0
        if (ur < -0.25) continue;
        auto op = assemble_short_range(0.0, 1.0, ur, 1.0, mu, 12);
        for (int k = 0; k < 12; ++k) CHECK(op.d_coeff(k) > 0.0);
    }
}

TEST_CASE("pencil reduction to the tridiagonal operator") {
    // (T - eps W) equals the tridiagonal operator at mu = sqrt(-4 eps)
    double u0 = -6.0, u1 = 10.0, ur = 2.5;
    double nu = std::sqrt(1.0 + 4.0 * ur);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> eps_dist(-10.0, -0.1);
    const int n = 14;
    for (int rep = 0; rep < 20; ++rep) {
        double eps = eps_dist(rng);
        double mu = std::sqrt(-4.0 * eps);
        auto fb = assemble_fixed_basis(u0, u1, ur, 1.0, mu, nu, n);
        Matrix lhs = fb.t - eps * fb.w;
        Matrix rhs = Matrix::from_tridiag(assemble_short_range(u0, u1, ur, 1.0, mu, n).at(eps));
        double scale = fb.t.max_abs();
        CHECK((lhs - rhs).max_abs() < 1e-10 * scale);
    }
}

TEST_CASE("overlap pencil is positive definite") {
    double ur = 2.5, nu = std::sqrt(1.0 + 4.0 * ur);
    for (int n : {10, 25, 40}) {
        auto fb = assemble_fixed_basis(-6.0, 10.0, ur, 1.0, 1.2, nu, n);
        auto eig = eigensolve::eig_dense(fb.w, false);
        CHECK(eig.values.front() > 0.0);
        CHECK(fb.w.symmetry_defect() < 1e-12);
        CHECK(fb.t.symmetry_defect() < 1e-12);
    }
}

TEST_CASE("plain-diagonal limit of the pencil") {
    double ur = 0.0, nu = 1.0;
    auto fb = assemble_fixed_basis(0.0, 0.0, ur, 1.0, 0.0, nu, 5);
    for (int k = 0; k < 5; ++k) {
        double b = k + 0.5 * (nu + 1.0);
        CHECK(fb.t(k, k) == doctest::Approx(b * b).epsilon(1e-13));
    }
    for (int i = 0; i < 5; ++i)
        for (int j = i + 2; j < 5; ++j) CHECK(std::abs(fb.t(i, j)) < 1e-13);
}

TEST_CASE("nu closure is enforced") {
    CHECK_THROWS_AS(assemble_fixed_basis(0.0, 1.0, 2.5, 1.0, 1.0, 2.0, 5), std::domain_error);
}

TEST_CASE("quadrature assembly: oscillator configuration is tridiagonal") {
    double omega = 1.0, lambda = 1.2;
    int ell = 0;
    tra::solver::SolveConfig cfg;
    cfg.problem = tra::solver::Problem::Oscillator;
    cfg.omega = omega;
    cfg.ell = ell;
    cfg.lambda = lambda;
    auto spec = tra::solver::problem_basis(cfg, 0.0);
    potentials::PotentialSpec osc{"spherical_oscillator",
                                  {{"w4", std::pow(omega, 4)}},
                                  0.0,
                                  std::numeric_limits<double>::infinity(),
                                  ""};
    const int n = 15;
    Matrix j = quadrature_assemble(spec, osc, ell, 0.3, 1.0, n, 2 * n + 8);
    CHECK(j.symmetry_defect() < 1e-12);
    CHECK(tridiagonality_defect(j) < 1e-8);

    // entries agree with the analytic assembly: scale to match
    auto analytic = assemble_oscillator(omega, lambda, ell, n);
    Matrix want = Matrix::from_tridiag(analytic.h);
    for (int k = 0; k < n; ++k) want(k, k) -= 0.3 / analytic.energy_scale;
    Matrix got = j * (1.0 / analytic.energy_scale);
    CHECK((got - want).max_abs() < 1e-9 * want.max_abs());
}

TEST_CASE("quadrature assembly matches the tridiagonal operator entrywise") {
    double u0 = -6.0, u1 = 10.0, ur = 2.5, lambda = 1.0;
    double eps = -4.0;
    double mu = std::sqrt(-4.0 * eps);
    double nu = std::sqrt(1.0 + 4.0 * ur);
    tra::potentials::PotentialSpec pot =
        potentials::make_short_range(potentials::ShortRangeParams::from_u(u0, u1, ur, lambda));
    auto spec = tra::basis::make_jacobi_basis(mu, nu, 0.5 * mu, 0.5 * (nu + 1.0),
                                              tra::basis::make_map(tra::basis::MapKind::ShiftedExp,
                                                                   lambda));
    const int n = 12;
    double energy = 0.5 * lambda * lambda * eps;
    Matrix got = quadrature_assemble(spec, pot, 0, energy, 2.0 / lambda, n, 2 * n + 24);
    Matrix want = Matrix::from_tridiag(assemble_short_range(u0, u1, ur, lambda, mu, n).at(eps));
    CHECK(tridiagonality_defect(got) < 1e-8);
    CHECK((got - want).max_abs() <= 1e-9 * want.max_abs());
}

TEST_CASE("mis-configured basis exponents break tridiagonality") {
    double u0 = -6.0, u1 = 10.0, ur = 2.5, lambda = 1.0;
    double eps = -4.0, mu = std::sqrt(-4.0 * eps), nu = std::sqrt(1.0 + 4.0 * ur);
    auto pot = potentials::make_short_range(potentials::ShortRangeParams::from_u(u0, u1, ur, lambda));
    // wrong lower exponent: 2 beta = nu instead of nu + 1; the integrand now
    // converges too slowly for the default doubling gate
    auto bad = tra::basis::make_jacobi_basis(
        mu, nu, 0.5 * mu, 0.5 * nu, tra::basis::make_map(tra::basis::MapKind::ShiftedExp, lambda));
    const int n = 12;
    CHECK_THROWS_AS(quadrature_assemble(bad, pot, 0, 0.5 * eps, 2.0, n, 2 * n + 24),
                    std::runtime_error);
    Matrix j = quadrature_assemble(bad, pot, 0, 0.5 * eps, 2.0, n, 2 * n + 24, 1e-2);
    CHECK(tridiagonality_defect(j) > 1e-6);
}

TEST_CASE("tridiagonality defect") {
    SymTridiag t({1.0, 2.0, 3.0}, {0.5, 0.25});
    CHECK(tridiagonality_defect(Matrix::from_tridiag(t)) == 0.0);

    Matrix ones(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ones(i, j) = 1.0;
    CHECK(tridiagonality_defect(ones) == 1.0);
}

TEST_CASE("truncation-insensitive overlap prediction") {
    double mu = 3.0, nu = 2.0;
    Matrix a = overlap_matrix_function(mu, nu, 6, 800);
    Matrix b = overlap_matrix_function(mu, nu, 6, 1200);
    CHECK((a - b).max_abs() < 1e-10 * a.max_abs());
}
