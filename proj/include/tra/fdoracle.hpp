#pragma once

#include <vector>

#include "tra/potentials.hpp"
#include "tra/solver.hpp"

namespace tra::fdoracle {

struct FDGrid {
    double x_min, x_max;
    int n_points = 4000;
    bool add_centrifugal = true;  // adds ell(ell+1)/(2x^2) for radial problems

    static FDGrid short_range_default(double lambda) { return {1e-4, 30.0 / lambda, 4000, false}; }
};

// Lowest k eigenvalues of -1/2 psi'' + [V + ell(ell+1)/(2x^2)] psi = E psi on
// a Dirichlet box, central differences.  The grid is refined by doubling
// until consecutive refinements agree to 1e-6 (relative for |E| > 1); the
// returned values are Richardson-extrapolated.  Throws std::runtime_error if
// the refinement cap is reached without convergence.
std::vector<double> fd_spectrum(const potentials::PotentialSpec& pot, int ell, const FDGrid& grid,
                                int k);

// m-th eigenstate on the grid, grid-normalized, first antinode positive.
solver::WavefunctionSample fd_wavefunction(const potentials::PotentialSpec& pot, int ell,
                                           const FDGrid& grid, int m);

// Count of clearly bound levels (below the continuum threshold by margin).
int fd_bound_count(const potentials::PotentialSpec& pot, int ell, const FDGrid& grid,
                   double threshold = -1e-2);

}  // namespace tra::fdoracle
