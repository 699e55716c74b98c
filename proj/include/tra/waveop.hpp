#pragma once

#include <functional>

#include "tra/basis.hpp"
#include "tra/matrix.hpp"
#include "tra/orthopoly.hpp"
#include "tra/potentials.hpp"

namespace tra::waveop {

// Matrix of multiplication by y in the orthonormal polynomial basis.
// Jacobi diagonal (nu^2-mu^2)/((2n+mu+nu)(2n+mu+nu+2)); Laguerre diagonal
// 2n+nu+1 with off-diagonal -sqrt((n+1)(n+nu+1)).
SymTridiag position_matrix(const orthopoly::PolynomialFamily& fam, int n);

// Radial oscillator wave-operator matrix in the Laguerre basis fixed by
// beta = 1/2, nu = 2 alpha - 1/2, 2 alpha = ell + 1.  ScaleDependent uses
// the coupling omega^4/lambda^2, whose spectrum is exact only at
// lambda = 1/sqrt(2); ScaleInvariant (the default wherever the spectrum is
// consumed) uses omega^4/(2 lambda^4), which reproduces
// E = omega^2 (2n + ell + 3/2) at every basis scale.  Physical energies are
// energy_scale times the matrix eigenvalues.
enum class OscillatorCoupling { ScaleDependent, ScaleInvariant };

struct OscillatorMatrix {
    SymTridiag h;
    double energy_scale;
    double nu;
};
OscillatorMatrix assemble_oscillator(double omega, double lambda, int ell, int n,
                                     OscillatorCoupling coupling = OscillatorCoupling::ScaleInvariant);

// Tridiagonal wave operator for the three-parameter short-range potential,
// scaled by 2/lambda^2:
//   diag (n + (mu+nu+1)/2)^2 + (eps + u0) + u1 C_n,  off-diag u1 D_n
// with nu = sqrt(1 + 4 ur).
struct ShortRangeWaveOp {
    double u0, u1, ur, lambda, mu, nu;
    int n;

    SymTridiag at(double eps) const;
    double c_coeff(int k) const;
    double d_coeff(int k) const;
};
ShortRangeWaveOp assemble_short_range(double u0, double u1, double ur, double lambda, double mu, int n);

// Energy-independent-basis form of the same operator: with
// Y = position_matrix(Jacobi{mu,nu}) the pencil is
//   T = diag((n+(mu+nu+1)/2)^2) + u0 I + u1 Y - (mu^2/2)(I-Y)^{-1}
//   W = (I+Y)(I-Y)^{-1}
// and T - eps W reproduces the tridiagonal operator exactly when
// mu = sqrt(-4 eps).  Physical condition: T f = eps W f.
struct FixedBasisOperator {
    Matrix t;
    Matrix w;
};
FixedBasisOperator assemble_fixed_basis(double u0, double u1, double ur, double lambda, double mu,
                                        double nu, int n);

// Overlap of the short-range-configuration basis as a matrix function of Y,
// evaluated with an enlarged internal truncation so entries are converged.
Matrix overlap_matrix_function(double mu, double nu, int n, int n_internal);

// Full <phi_m| scale*(H - E) |phi_n> under the dx measure by Gauss
// quadrature (weak form; manifestly symmetric).  ell adds the centrifugal
// term ell(ell+1)/(2 x^2).  The assembly is repeated with 2*N_quad nodes and
// must agree to 1e-9 relative, otherwise std::runtime_error.
Matrix quadrature_assemble(const basis::BasisSpec& spec, const potentials::PotentialSpec& pot,
                           int ell, double energy, double scale, int n, int n_quad,
                           double doubling_tol = 1e-9);

// max |M_nm| over |n-m| >= 2, divided by max |M_nm| overall
double tridiagonality_defect(const Matrix& m);

}  // namespace tra::waveop
