#include "tra/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tra/eigensolve.hpp"

namespace tra::solver {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int digits_in_common(double a, double b) {
    double diff = std::abs(a - b);
    if (diff == 0.0) return 15;
    double ref = std::max({std::abs(a), std::abs(b), 1e-300});
    int d = static_cast<int>(std::floor(-std::log10(diff / ref)));
    return std::clamp(d, 0, 15);
}

// eigenvalues (ascending) for one mode at basis size n
std::vector<double> short_range_eigenvalues(const SolveConfig& cfg, double mu, int n, Mode mode) {
    using namespace tra::waveop;
    if (mode == Mode::PaperLiteral) {
        ShortRangeWaveOp op = assemble_short_range(cfg.u0, cfg.u1, cfg.ur, cfg.lambda, 0.0, n);
        Matrix h = Matrix::from_tridiag(op.at(0.0));
        FixedBasisOperator fb =
            assemble_fixed_basis(cfg.u0, cfg.u1, cfg.ur, cfg.lambda, 0.0, op.nu, n);
        return eigensolve::eig_generalized(h, fb.w, false).values;
    }
    double nu = std::sqrt(1.0 + 4.0 * cfg.ur);
    FixedBasisOperator fb = assemble_fixed_basis(cfg.u0, cfg.u1, cfg.ur, cfg.lambda, mu, nu, n);
    return eigensolve::eig_generalized(fb.t, fb.w, false).values;
}

// self-consistent level: iterate mu <- sqrt(-4 eps_m) until |d eps| < 1e-10
struct ScLevel {
    double eps;
    double mu;
    bool bound;
};

ScLevel self_consistent_level(const SolveConfig& cfg, int m, int n, double mu_start) {
    double mu = mu_start;
    double eps_prev = kNaN;
    for (int it = 0; it < 100; ++it) {
        auto vals = short_range_eigenvalues(cfg, mu, n, Mode::FixedBasis);
        if (m >= static_cast<int>(vals.size())) return {kNaN, mu, false};
        double eps = vals[m];
        if (eps >= 0.0) return {eps, mu, false};
        if (it > 0 && std::abs(eps - eps_prev) < 1e-10) return {eps, std::sqrt(-4.0 * eps), true};
        eps_prev = eps;
        mu = std::sqrt(-4.0 * eps);
    }
    throw std::runtime_error("solve_spectrum: self-consistent iteration did not converge");
}

std::vector<double> oscillator_eigenvalues(const SolveConfig& cfg, int n) {
    auto osc = waveop::assemble_oscillator(cfg.omega, cfg.lambda, cfg.ell, n);
    auto eig = eigensolve::eig_tridiag(osc.h, false);
    for (double& v : eig.values) v *= osc.energy_scale;
    return eig.values;  // physical energies, ascending
}

}  // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::PaperLiteral: return "paper-literal";
        case Mode::FixedBasis: return "fixed-basis";
        case Mode::SelfConsistent: return "self-consistent";
    }
    return "?";
}

std::optional<Mode> mode_from_name(const std::string& s) {
    if (s == "paper-literal") return Mode::PaperLiteral;
    if (s == "fixed-basis") return Mode::FixedBasis;
    if (s == "self-consistent") return Mode::SelfConsistent;
    return std::nullopt;
}

std::vector<double> expansion_coeffs(const std::vector<double>& a, const std::vector<double>& b,
                                     double energy, int n) {
    if (n < 1) throw std::invalid_argument("expansion_coeffs: n must be positive");
    if (static_cast<int>(a.size()) < n - 1 || static_cast<int>(b.size()) < n - 1)
        throw std::invalid_argument("expansion_coeffs: coefficient sequences too short");
    std::vector<double> f(n);
    f[0] = 1.0;
    for (int k = 0; k + 1 < n; ++k) {
        if (b[k] == 0.0) throw std::domain_error("expansion_coeffs: vanishing b_n divisor");
        double prev = k > 0 ? b[k - 1] * f[k - 1] : 0.0;
        f[k + 1] = ((energy - a[k]) * f[k] - prev) / b[k];
    }
    return f;
}

double oscillator_spectrum_analytic(int n, int ell, double omega) {
    if (n < 0 || ell < 0 || omega <= 0.0)
        throw std::domain_error("oscillator_spectrum_analytic: invalid arguments");
    return omega * omega * (2.0 * n + ell + 1.5);
}

RecursionInput level_recursion(const SolveConfig& cfg, double eps, double mu, int n) {
    RecursionInput out;
    if (cfg.problem == Problem::Oscillator) {
        auto osc = waveop::assemble_oscillator(cfg.omega, cfg.lambda, cfg.ell, n);
        out.a = osc.h.d;
        out.b = osc.h.e;
        out.e_shifted = 0.5 * eps;  // matrix eigenvalue = E / lambda^2
        return out;
    }
    auto op = waveop::assemble_short_range(cfg.u0, cfg.u1, cfg.ur, cfg.lambda, mu, n);
    out.a.resize(n);
    out.b.resize(n - 1);
    double half = 0.5 * (mu + op.nu + 1.0);
    for (int k = 0; k < n; ++k) {
        double bk = k + half;
        out.a[k] = bk * bk + cfg.u1 * op.c_coeff(k);
    }
    for (int k = 0; k + 1 < n; ++k) out.b[k] = cfg.u1 * op.d_coeff(k);
    out.e_shifted = -(eps + cfg.u0);
    return out;
}

bool square_summable_tail(const std::vector<double>& coeffs) {
    double total = 0.0, tail = 0.0;
    std::size_t half = coeffs.size() / 2;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        double s = coeffs[i] * coeffs[i];
        total += s;
        if (i > half) tail += s;
    }
    if (total == 0.0) return false;
    return tail < 0.01 * total;
}

std::vector<double> stable_coefficients(const SolveConfig& cfg, double eps, double mu, int n) {
    RecursionInput rec = level_recursion(cfg, eps, mu, n);
    SymTridiag j(n);
    for (int k = 0; k < n; ++k) j.d[k] = rec.a[k] - rec.e_shifted;
    j.e = rec.b;
    auto f = eigensolve::tridiag_eigenvector(j, 0.0);
    // match the f_0 = 1 seed orientation up to overall scale
    std::size_t lead = 0;
    while (lead + 1 < f.size() && f[lead] == 0.0) ++lead;
    if (f[lead] < 0.0)
        for (double& v : f) v = -v;
    return f;
}

namespace {

bool level_is_bound(const SolveConfig& cfg, double eps, double mu) {
    int nf = std::max(40, 2 * cfg.basis_size);
    return square_summable_tail(stable_coefficients(cfg, eps, mu, nf));
}

}  // namespace

SpectrumResult solve_spectrum(const SolveConfig& cfg) {
    if (cfg.basis_size < 1) throw std::invalid_argument("solve_spectrum: basis_size must be >= 1");
    SpectrumResult res;
    res.problem = cfg.problem;
    res.mode = cfg.mode;
    res.basis_size = cfg.basis_size;
    res.lambda = cfg.lambda;
    res.sweep_sizes = cfg.sweep;
    if (std::find(res.sweep_sizes.begin(), res.sweep_sizes.end(), cfg.basis_size) ==
        res.sweep_sizes.end())
        res.sweep_sizes.push_back(cfg.basis_size);
    std::sort(res.sweep_sizes.begin(), res.sweep_sizes.end());

    double l2 = cfg.lambda * cfg.lambda;

    if (cfg.problem == Problem::Oscillator) {
        auto main_vals = oscillator_eigenvalues(cfg, cfg.basis_size);
        int count = std::min<int>(cfg.levels, main_vals.size());
        std::vector<std::vector<double>> sweep_vals;
        for (int ns : res.sweep_sizes) sweep_vals.push_back(oscillator_eigenvalues(cfg, ns));
        for (int m = 0; m < count; ++m) {
            LevelInfo lv;
            lv.energy = main_vals[m];
            lv.eps = 2.0 * lv.energy / l2;
            lv.mu = 0.0;
            lv.bound = level_is_bound(cfg, lv.eps, 0.0);
            for (const auto& sv : sweep_vals)
                lv.sweep_eps.push_back(m < static_cast<int>(sv.size()) ? 2.0 * sv[m] / l2 : kNaN);
            auto k = lv.sweep_eps.size();
            lv.converged_digits =
                k >= 2 ? digits_in_common(lv.sweep_eps[k - 1], lv.sweep_eps[k - 2]) : 0;
            res.levels.push_back(std::move(lv));
        }
        return res;
    }

    // short-range
    if (cfg.mode == Mode::SelfConsistent) {
        // bound levels only, each with its own converged mu
        for (int m = 0; m < cfg.levels; ++m) {
            ScLevel sc = self_consistent_level(cfg, m, cfg.basis_size, cfg.mu_fixed);
            if (!sc.bound) break;
            LevelInfo lv;
            lv.eps = sc.eps;
            lv.energy = 0.5 * l2 * sc.eps;
            lv.mu = sc.mu;
            lv.bound = level_is_bound(cfg, sc.eps, sc.mu);
            for (int ns : res.sweep_sizes) {
                if (ns == cfg.basis_size) {
                    lv.sweep_eps.push_back(sc.eps);
                    continue;
                }
                ScLevel s2 = self_consistent_level(cfg, m, ns, sc.mu);
                lv.sweep_eps.push_back(s2.bound ? s2.eps : kNaN);
            }
            auto k = lv.sweep_eps.size();
            lv.converged_digits =
                k >= 2 ? digits_in_common(lv.sweep_eps[k - 1], lv.sweep_eps[k - 2]) : 0;
            res.levels.push_back(std::move(lv));
        }
        return res;
    }

    double mu_used = cfg.mode == Mode::PaperLiteral ? 0.0 : cfg.mu_fixed;
    auto main_vals = short_range_eigenvalues(cfg, mu_used, cfg.basis_size, cfg.mode);
    std::vector<std::vector<double>> sweep_vals;
    for (int ns : res.sweep_sizes)
        sweep_vals.push_back(short_range_eigenvalues(cfg, mu_used, ns, cfg.mode));
    int count = std::min<int>(cfg.levels, main_vals.size());
    for (int m = 0; m < count; ++m) {
        LevelInfo lv;
        lv.eps = main_vals[m];
        lv.energy = 0.5 * l2 * lv.eps;
        lv.mu = mu_used;
        lv.bound = lv.eps < 0.0 && level_is_bound(cfg, lv.eps, mu_used);
        for (const auto& sv : sweep_vals)
            lv.sweep_eps.push_back(m < static_cast<int>(sv.size()) ? sv[m] : kNaN);
        auto k = lv.sweep_eps.size();
        lv.converged_digits =
            k >= 2 ? digits_in_common(lv.sweep_eps[k - 1], lv.sweep_eps[k - 2]) : 0;
        res.levels.push_back(std::move(lv));
    }
    return res;
}

basis::BasisSpec problem_basis(const SolveConfig& cfg, double mu) {
    using namespace tra::basis;
    if (cfg.problem == Problem::Oscillator) {
        double nu = cfg.ell + 0.5;
        return make_laguerre_basis(nu, 0.5 * (cfg.ell + 1.0), 0.5,
                                   make_map(MapKind::Quadratic, cfg.lambda));
    }
    double nu = std::sqrt(1.0 + 4.0 * cfg.ur);
    return make_jacobi_basis(mu, nu, 0.5 * mu, 0.5 * (nu + 1.0),
                             make_map(MapKind::ShiftedExp, cfg.lambda));
}

int count_interior_nodes(const std::vector<double>& values, double rel_floor) {
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) return 0;
    double floor_abs = rel_floor * vmax;
    int nodes = 0;
    double last = 0.0;
    for (double v : values) {
        if (std::abs(v) < floor_abs) continue;
        if (last != 0.0 && ((v > 0) != (last > 0))) ++nodes;
        last = v;
    }
    return nodes;
}

WavefunctionSample reconstruct_wavefunction(const SolveConfig& cfg, double eps, double mu,
                                            const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("reconstruct_wavefunction: grid too small");
    int n = cfg.basis_size;
    WavefunctionSample out;
    out.coeffs = stable_coefficients(cfg, eps, mu, n);

    basis::BasisSpec spec = problem_basis(cfg, mu);
    out.x = grid;
    out.psi.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        basis::MapPoint p = basis::map_eval(spec.map, grid[i]);
        auto phi = basis::basis_eval_all_y(spec, n - 1, p.y);
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += out.coeffs[k] * phi[k];
        out.psi[i] = s;
    }

    // trapezoidal normalization, first antinode positive
    double norm2 = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double h = grid[i + 1] - grid[i];
        norm2 += 0.5 * h * (out.psi[i] * out.psi[i] + out.psi[i + 1] * out.psi[i + 1]);
    }
    out.norm = std::sqrt(norm2);
    double vmax = 0.0;
    for (double v : out.psi) vmax = std::max(vmax, std::abs(v));
    double flip = 1.0;
    for (std::size_t i = 1; i + 1 < out.psi.size(); ++i) {
        if (std::abs(out.psi[i]) > std::abs(out.psi[i - 1]) &&
            std::abs(out.psi[i]) >= std::abs(out.psi[i + 1]) &&
            std::abs(out.psi[i]) > 0.2 * vmax) {
            flip = out.psi[i] > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    if (out.norm > 0.0)
        for (double& v : out.psi) v *= flip / out.norm;

    out.energy = 0.5 * cfg.lambda * cfg.lambda * eps;
    return out;
}

}  // namespace tra::solver
