#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tra/basis.hpp"
#include "tra/waveop.hpp"

namespace tra::solver {

enum class Problem { Oscillator, ShortRange };
enum class Mode { PaperLiteral, FixedBasis, SelfConsistent };

std::string mode_name(Mode m);
std::optional<Mode> mode_from_name(const std::string& s);

struct SolveConfig {
    Problem problem = Problem::Oscillator;

    // oscillator
    double omega = 1.0;
    int ell = 0;

    // short-range (dimensionless couplings u_i = 2 V_i / lambda^2)
    double u0 = 0.0, u1 = 0.0, ur = 0.0;

    double lambda = 1.0;  // shared basis / potential scale
    Mode mode = Mode::SelfConsistent;
    double mu_fixed = 1.0;  // fixed-basis and paper-literal-adjacent runs
    int basis_size = 20;
    std::vector<int> sweep = {10, 20, 30, 40, 50};
    int levels = 20;  // max levels reported
};

struct LevelInfo {
    double eps;     // dimensionless 2E/lambda^2
    double energy;  // physical E
    bool bound;
    double mu;                        // basis mu used for this level
    std::vector<double> sweep_eps;    // value at each sweep size (NaN when absent)
    int converged_digits;             // digits unchanged between the two largest sweep sizes
};

struct SpectrumResult {
    Problem problem;
    Mode mode;
    int basis_size;
    double lambda;
    std::vector<int> sweep_sizes;
    std::vector<LevelInfo> levels;
};

struct WavefunctionSample {
    double energy;
    std::vector<double> coeffs;
    std::vector<double> x;
    std::vector<double> psi;
    double norm;  // trapezoidal integral of psi^2 before normalization
};

// f_0 = 1; f_{n+1} = [(E - a_n) f_n - b_{n-1} f_{n-1}] / b_n.
// Throws std::domain_error when a needed b_n vanishes.
std::vector<double> expansion_coeffs(const std::vector<double>& a, const std::vector<double>& b,
                                     double energy, int n);

double oscillator_spectrum_analytic(int n, int ell, double omega);

SpectrumResult solve_spectrum(const SolveConfig& cfg);

// Coefficient recursion inputs for the configured problem at basis mu.
struct RecursionInput {
    std::vector<double> a;
    std::vector<double> b;
    double e_shifted;  // value fed to expansion_coeffs for this level
};
RecursionInput level_recursion(const SolveConfig& cfg, double eps, double mu, int n);

// Expansion coefficients evaluated stably as the null vector of the
// tridiagonal wave operator (inverse iteration).  Proportional to
// expansion_coeffs at the same level but free of the dominant-solution
// blow-up that forward recursion suffers at bound-state energies.
std::vector<double> stable_coefficients(const SolveConfig& cfg, double eps, double mu, int n);

// Expansion coefficients at (eps, mu) and the reconstructed state on a grid,
// normalized to unit trapezoidal norm with the first antinode positive.
WavefunctionSample reconstruct_wavefunction(const SolveConfig& cfg, double eps, double mu,
                                            const std::vector<double>& grid);

// Basis used by the configured problem.
basis::BasisSpec problem_basis(const SolveConfig& cfg, double mu);

// Interior sign changes above a relative floor; Sturm-correct for the m-th
// bound state.
int count_interior_nodes(const std::vector<double>& values, double rel_floor = 1e-3);

// Square-summability flag used to separate bound states from discretized
// continuum: tail sum over n > n/2 below 1 percent of the total.
bool square_summable_tail(const std::vector<double>& coeffs);

}  // namespace tra::solver
