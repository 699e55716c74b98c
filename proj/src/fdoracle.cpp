#include "tra/fdoracle.hpp"

#include <cmath>
#include <stdexcept>

#include "tra/eigensolve.hpp"

namespace tra::fdoracle {

namespace {

SymTridiag discretize(const potentials::PotentialSpec& pot, int ell, const FDGrid& grid,
                      int n_points) {
    if (n_points < 200) throw std::invalid_argument("fdoracle: need at least 200 grid points");
    double h = (grid.x_max - grid.x_min) / (n_points + 1);
    SymTridiag t(n_points);
    double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < n_points; ++i) {
        double x = grid.x_min + (i + 1) * h;
        double v = potentials::potential_eval(pot, x);
        if (grid.add_centrifugal && ell > 0) v += 0.5 * ell * (ell + 1.0) / (x * x);
        t.d[i] = inv_h2 + v;
    }
    for (int i = 0; i + 1 < n_points; ++i) t.e[i] = -0.5 * inv_h2;
    return t;
}

std::vector<double> lowest(const potentials::PotentialSpec& pot, int ell, const FDGrid& grid,
                           int n_points, int k) {
    return eigensolve::eig_tridiag_lowest(discretize(pot, ell, grid, n_points), k);
}

}  // namespace

std::vector<double> fd_spectrum(const potentials::PotentialSpec& pot, int ell, const FDGrid& grid,
                                int k) {
    int n = grid.n_points;
    std::vector<double> coarse = lowest(pot, ell, grid, n, k);
    for (int round = 0; round < 7; ++round) {
        std::vector<double> fine = lowest(pot, ell, grid, 2 * n, k);
        bool ok = true;
        for (int i = 0; i < k; ++i) {
            double tol = 1e-6 * std::max(1.0, std::abs(fine[i]));
            if (std::abs(fine[i] - coarse[i]) > tol) ok = false;
        }
        if (ok) {
            // second-order scheme: Richardson combination removes the h^2 term
            std::vector<double> out(k);
            for (int i = 0; i < k; ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
            return out;
        }
        coarse = std::move(fine);
        n *= 2;
    }
    throw std::runtime_error("fd_spectrum: grid refinement did not converge");
}

solver::WavefunctionSample fd_wavefunction(const potentials::PotentialSpec& pot, int ell,
                                           const FDGrid& grid, int m) {
    if (m < 0) throw std::out_of_range("fd_wavefunction: negative state index");
    SymTridiag t = discretize(pot, ell, grid, grid.n_points);
    auto vals = eigensolve::eig_tridiag_lowest(t, m + 1);
    if (m >= static_cast<int>(vals.size()))
        throw std::out_of_range("fd_wavefunction: state index beyond computed levels");
    auto vec = eigensolve::tridiag_eigenvector(t, vals[m]);

    solver::WavefunctionSample out;
    out.energy = vals[m];
    double h = (grid.x_max - grid.x_min) / (grid.n_points + 1);
    out.x.resize(grid.n_points);
    out.psi = std::move(vec);
    for (int i = 0; i < grid.n_points; ++i) out.x[i] = grid.x_min + (i + 1) * h;

    double norm2 = 0.0;
    for (double v : out.psi) norm2 += v * v * h;
    out.norm = std::sqrt(norm2);
    double vmax = 0.0;
    for (double v : out.psi) vmax = std::max(vmax, std::abs(v));
    double flip = 1.0;
    for (std::size_t i = 1; i + 1 < out.psi.size(); ++i) {
        if (std::abs(out.psi[i]) > std::abs(out.psi[i - 1]) &&
            std::abs(out.psi[i]) >= std::abs(out.psi[i + 1]) && std::abs(out.psi[i]) > 0.2 * vmax) {
            flip = out.psi[i] > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    for (double& v : out.psi) v *= flip / out.norm;
    return out;
}

int fd_bound_count(const potentials::PotentialSpec& pot, int ell, const FDGrid& grid,
                   double threshold) {
    auto vals = lowest(pot, ell, grid, grid.n_points, std::min(grid.n_points, 24));
    int count = 0;
    for (double v : vals)
        if (v < threshold) ++count;
    return count;
}

}  // namespace tra::fdoracle
