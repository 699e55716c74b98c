#include "tra/waveop.hpp"

#include <cmath>
#include <stdexcept>

#include "tra/eigensolve.hpp"

namespace tra::waveop {

SymTridiag position_matrix(const orthopoly::PolynomialFamily& fam, int n) {
    if (n < 1) throw std::invalid_argument("position_matrix: need n >= 1");
    if (fam.family != orthopoly::Family::JacobiP && fam.family != orthopoly::Family::LaguerreL)
        throw std::invalid_argument("position_matrix: Jacobi and Laguerre families only");
    auto rc = orthopoly::orthonormal_coeffs(fam, n);
    return SymTridiag(std::move(rc.a), std::move(rc.b));
}

OscillatorMatrix assemble_oscillator(double omega, double lambda, int ell, int n,
                                     OscillatorCoupling coupling) {
    if (omega <= 0.0 || lambda <= 0.0 || ell < 0 || n < 1)
        throw std::domain_error("assemble_oscillator: requires omega, lambda > 0 and ell >= 0");
    double nu = ell + 0.5;
    double w4 = omega * omega * omega * omega;
    double w = coupling == OscillatorCoupling::ScaleDependent
                   ? w4 / (lambda * lambda)
                   : w4 / (2.0 * lambda * lambda * lambda * lambda);
    SymTridiag h(n);
    for (int k = 0; k < n; ++k) h.d[k] = (2.0 * k + nu + 1.0) * (0.5 + w);
    for (int k = 0; k + 1 < n; ++k) h.e[k] = (0.5 - w) * std::sqrt((k + 1.0) * (k + nu + 1.0));
    return {std::move(h), lambda * lambda, nu};
}

double ShortRangeWaveOp::c_coeff(int k) const {
    if (k == 0) return (nu - mu) / (mu + nu + 2.0);
    double s = 2.0 * k + mu + nu;
    return (nu * nu - mu * mu) / (s * (s + 2.0));
}

double ShortRangeWaveOp::d_coeff(int k) const {
    double s = 2.0 * k + mu + nu;
    double core = k == 0 ? (mu + 1.0) * (nu + 1.0) / (s + 3.0)
                         : (k + 1.0) * (k + mu + 1.0) * (k + nu + 1.0) * (k + mu + nu + 1.0) /
                               ((s + 1.0) * (s + 3.0));
    return 2.0 / (s + 2.0) * std::sqrt(core);
}

SymTridiag ShortRangeWaveOp::at(double eps) const {
    SymTridiag j(n);
    double half = 0.5 * (mu + nu + 1.0);
    for (int k = 0; k < n; ++k) {
        double b = k + half;
        j.d[k] = b * b + (eps + u0) + u1 * c_coeff(k);
    }
    for (int k = 0; k + 1 < n; ++k) j.e[k] = u1 * d_coeff(k);
    return j;
}

ShortRangeWaveOp assemble_short_range(double u0, double u1, double ur, double lambda, double mu, int n) {
    if (ur < -0.25) throw std::domain_error("assemble_short_range: requires ur >= -1/4");
    if (mu <= -1.0) throw std::domain_error("assemble_short_range: requires mu > -1");
    if (n < 1) throw std::invalid_argument("assemble_short_range: need n >= 1");
    double nu = std::sqrt(1.0 + 4.0 * ur);
    return {u0, u1, ur, lambda, mu, nu, n};
}

FixedBasisOperator assemble_fixed_basis(double u0, double u1, double ur, double lambda, double mu,
                                        double nu, int n) {
    if (ur < -0.25) throw std::domain_error("assemble_fixed_basis: requires ur >= -1/4");
    double nu_req = std::sqrt(1.0 + 4.0 * ur);
    if (std::abs(nu - nu_req) > 1e-10 * std::max(1.0, nu_req))
        throw std::domain_error("assemble_fixed_basis: nu^2 = 1 + 4 ur violated");
    (void)lambda;

    Matrix y = Matrix::from_tridiag(position_matrix(orthopoly::make_jacobi(mu, nu), n));
    Matrix id = Matrix::identity(n);
    Matrix i_minus_y = id - y;
    // (I - Y) is positive definite for mu, nu > -1; guarded anyway
    Matrix inv_imy = eigensolve::cholesky_solve(i_minus_y, id);
    inv_imy.symmetrize();

    FixedBasisOperator out;
    out.w = (id + y) * inv_imy;
    out.w.symmetrize();
    out.t = Matrix(n);
    double half = 0.5 * (mu + nu + 1.0);
    for (int k = 0; k < n; ++k) {
        double b = k + half;
        out.t(k, k) = b * b + u0;
    }
    out.t += u1 * y;
    out.t -= (0.5 * mu * mu) * inv_imy;
    out.t.symmetrize();
    return out;
}

Matrix overlap_matrix_function(double mu, double nu, int n, int n_internal) {
    if (n_internal < n) throw std::invalid_argument("overlap_matrix_function: n_internal < n");
    Matrix y = Matrix::from_tridiag(position_matrix(orthopoly::make_jacobi(mu, nu), n_internal));
    Matrix id = Matrix::identity(n_internal);
    Matrix w = (id + y) * eigensolve::cholesky_solve(id - y, id);
    w.symmetrize();
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = w(i, j);
    return out;
}

namespace {

Matrix quadrature_assemble_once(const basis::BasisSpec& spec,
                                const potentials::PotentialSpec& pot, int ell, double energy,
                                double scale, int n, int n_quad) {
    using basis::BasisFamily;
    auto fam = spec.polynomial();
    basis::Quadrature q = basis::gauss_quadrature(fam, n_quad);

    Matrix out(n);
    std::vector<double> val(n), der(n);
    for (int i = 0; i < n_quad; ++i) {
        double y = q.nodes[i];
        double x = basis::map_invert(spec.map, y);
        basis::MapPoint mp = basis::map_eval(spec.map, x);
        double veff = potentials::potential_eval(pot, x);
        if (ell > 0) veff += 0.5 * ell * (ell + 1.0) / (x * x);

        auto sd = orthopoly::eval_sequence_derivs(fam, y, n - 1);
        double wprime;  // logarithmic derivative of the weight-factor prefactor
        double extra;
        if (spec.family == BasisFamily::Jacobi) {
            wprime = spec.beta / (1.0 + y) - spec.alpha / (1.0 - y);
            extra = std::pow(1.0 - y, 2.0 * spec.alpha - spec.mu) *
                    std::pow(1.0 + y, 2.0 * spec.beta - spec.nu);
        } else {
            wprime = spec.alpha / y - spec.beta;
            extra = std::pow(y, 2.0 * spec.alpha - spec.nu) *
                    std::exp((1.0 - 2.0 * spec.beta) * y);
        }
        double w2;  // second-order weight-factor bracket coefficient
        if (spec.family == BasisFamily::Jacobi) {
            w2 = spec.beta * (spec.beta - 1.0) / ((1.0 + y) * (1.0 + y)) +
                 spec.alpha * (spec.alpha - 1.0) / ((1.0 - y) * (1.0 - y)) -
                 2.0 * spec.alpha * spec.beta / (1.0 - y * y);
        } else {
            w2 = -spec.alpha / (y * y) + wprime * wprime;
        }
        for (int k = 0; k < n; ++k) {
            double a = spec.norm_const(k);
            val[k] = a * sd.p[k];
            // prefactor-stripped image of the wave operator acting on phi_k
            double g1 = sd.dp[k] + wprime * sd.p[k];
            double g2 = sd.d2p[k] + 2.0 * wprime * sd.dp[k] + w2 * sd.p[k];
            der[k] = a * (-0.5 * (mp.dy * mp.dy * g2 + mp.d2y * g1) +
                          (veff - energy) * sd.p[k]);
        }
        double wq = q.weights[i] * extra / mp.dy;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) out(a, b) += wq * val[a] * der[b];
    }
    out.symmetrize();
    return out * scale;
}

}  // namespace

Matrix quadrature_assemble(const basis::BasisSpec& spec, const potentials::PotentialSpec& pot,
                           int ell, double energy, double scale, int n, int n_quad,
                           double doubling_tol) {
    spec.validate();
    if (n < 1 || n_quad < n + 2) throw std::invalid_argument("quadrature_assemble: n_quad too small");
    Matrix coarse = quadrature_assemble_once(spec, pot, ell, energy, scale, n, n_quad);
    Matrix fine = quadrature_assemble_once(spec, pot, ell, energy, scale, n, 2 * n_quad);
    Matrix diff = fine - coarse;
    double ref = std::max(fine.max_abs(), 1.0);
    if (diff.max_abs() > doubling_tol * ref)
        throw std::runtime_error("quadrature_assemble: doubling test failed to converge");
    return fine;
}

double tridiagonality_defect(const Matrix& m) {
    double off = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if ((i > j ? i - j : j - i) >= 2) off = std::max(off, std::abs(m(i, j)));
    double all = m.max_abs();
    return all > 0.0 ? off / all : 0.0;
}

}  // namespace tra::waveop
