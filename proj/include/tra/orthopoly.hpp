#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tra::orthopoly {

enum class Family {
    JacobiP,
    LaguerreL,
    MeixnerPollaczek,
    HypMeixnerPollaczek,
    Meixner,
    Krawtchouk,
    ContinuousDualHahn,
    DualHahn,
    NovelH,
    NovelG,
};

// A named three-term-recursion definition.  Parameters are looked up by name
// (mu, nu, theta, beta, gamma, alpha, sigma, N as applicable); construction
// validates the family's parameter domain.
struct PolynomialFamily {
    Family family;
    std::map<std::string, double> params;
    bool normalized = false;

    double param(const std::string& key) const;
    bool has_param(const std::string& key) const;
    void validate() const;
};

PolynomialFamily make_jacobi(double mu, double nu);
PolynomialFamily make_laguerre(double nu);
PolynomialFamily make_meixner_pollaczek(double mu, double theta);
PolynomialFamily make_hyp_meixner_pollaczek(double mu, double theta);
PolynomialFamily make_meixner(double mu, double beta);
PolynomialFamily make_krawtchouk(int N, double gamma);
PolynomialFamily make_continuous_dual_hahn(double mu, double alpha, double beta);
PolynomialFamily make_dual_hahn(int N, double alpha, double beta);
PolynomialFamily make_novel_h(double mu, double nu, double alpha, double theta);
PolynomialFamily make_novel_g(double mu, double nu, double sigma);

// P_0..P_{n_max} by forward recursion; P_0 = 1, kind-one seeds for the novel
// families.  Optional seeds override P_1 (kind-two polynomials).
std::vector<double> eval_sequence(const PolynomialFamily& fam, double x, int n_max);
std::vector<std::complex<double>> eval_sequence(const PolynomialFamily& fam,
                                                std::complex<double> x, int n_max);
std::vector<double> eval_sequence_kind2(const PolynomialFamily& fam, double x, int n_max,
                                        double p1_seed);

// Values plus first and second derivatives with respect to x, obtained by
// differentiating the recursion.
struct SequenceDerivs {
    std::vector<double> p;
    std::vector<double> dp;
    std::vector<double> d2p;
};
SequenceDerivs eval_sequence_derivs(const PolynomialFamily& fam, double x, int n_max);

// Symmetric (orthonormal-form) recursion coefficients:
//   x P_n = a(n) P_n + b(n-1) P_{n-1} + b(n) P_{n+1}
struct RecursionCoeffs {
    std::vector<double> a;
    std::vector<double> b;  // size a.size()-1
};

// Standard-form recursion x P_n = a(n) P_n + down(n) P_{n-1} + up(n) P_{n+1}
// with norms lambda(n) > 0.  Symmetrizes via b_n = up(n) sqrt(lambda(n+1)/lambda(n))
// and cross-checks down(n+1) sqrt(lambda(n)/lambda(n+1)) against it; throws
// std::runtime_error if the two expressions disagree beyond 1e-12 relative.
struct StandardRecursion {
    std::function<double(int)> a;
    std::function<double(int)> down;
    std::function<double(int)> up;
};
RecursionCoeffs normalize(const StandardRecursion& rec, const std::function<double(int)>& lambda,
                          int count);

// Phase shifts and discrete spectra (all via specfun::log_gamma)
double mp_phase_shift(double mu, double z);
std::vector<double> mp_bound_spectrum(double mu, int m_max);
double cdh_phase_shift(double mu, double alpha, double beta, double z);

double gbar_level(double sigma, double nu, int n);  // closed form, no clamping
std::vector<double> gbar_spectrum(double sigma, double nu, int n_max);
double gbar_phase_shift(double sigma, double nu, double z);

// Least-squares fit of P_n ~ amplitude * n^{-tau} * cos(phase_n + delta)
// over n in [n_lo, n_hi], where phase_n is theta*n for the n-argument
// families and theta*ln(n) for NovelG.  For Meixner-Pollaczek the known
// slow phase drift -z ln(2 n sin theta) is included in the model so the
// fitted delta is directly comparable to the phase-shift formula.
// Throws std::runtime_error when the residual exceeds 0.25.
struct AsymptoticFit {
    double tau;
    double amplitude;
    double theta;
    double delta;
    double residual;
};
AsymptoticFit asymptotic_fit(const PolynomialFamily& fam, double x, int n_lo, int n_hi);

// Orthonormal-form coefficients used by matrix assembly and quadrature.
RecursionCoeffs orthonormal_coeffs(const PolynomialFamily& fam, int count);

// Norm lambda_n of the standard polynomials (Jacobi / Laguerre only).
double standard_norm(const PolynomialFamily& fam, int n);

}  // namespace tra::orthopoly
