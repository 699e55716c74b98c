#pragma once

#include <functional>
#include <vector>

#include "tra/matrix.hpp"

namespace tra::eigensolve {

struct EigResult {
    std::vector<double> values;           // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
    double residual = 0.0;                // max ||A v - lambda v|| / ||A||, when vectors kept
};

// All eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
// Deterministic: identical input gives identical output.  Throws
// std::runtime_error if an eigenvalue fails to converge within 30 sweeps.
EigResult eig_tridiag(const SymTridiag& m, bool want_vectors);

// Symmetric dense eigenproblem: Householder reduction, then QL.
// Throws std::invalid_argument if the symmetry defect exceeds 1e-12 relative.
EigResult eig_dense(const Matrix& m, bool want_vectors);

// Generalized symmetric-definite problem A f = lambda B f via Cholesky
// reduction.  Vectors are B-orthonormal.  Throws std::runtime_error naming
// the failing pivot when B is not positive definite.
EigResult eig_generalized(const Matrix& a, const Matrix& b, bool want_vectors);

// Lowest k eigenvalues of a symmetric tridiagonal matrix by Sturm-count
// bisection (no vectors).  Used where only the bottom of the spectrum is
// needed on large grids.
std::vector<double> eig_tridiag_lowest(const SymTridiag& m, int k);

// Eigenvector for an isolated eigenvalue by inverse iteration.
std::vector<double> tridiag_eigenvector(const SymTridiag& m, double eigenvalue);

// Eigenvalues (ascending) together with the first component of each
// orthonormal eigenvector; what Gauss-rule construction needs, at O(n^2).
struct NodesFirstComp {
    std::vector<double> values;
    std::vector<double> first;
};
NodesFirstComp tridiag_nodes_first_components(const SymTridiag& m);

// Roots of det J(E) = 0 located by sign changes of the tridiagonal
// determinant on an n_grid scan, bisected to |dE| < 1e-10.
std::vector<double> det_scan(const std::function<SymTridiag(double)>& jmat, double e_lo,
                             double e_hi, int n_grid);

// Cholesky factor L (lower) of a positive definite matrix.
Matrix cholesky(const Matrix& a);

// Solve A X = B with A positive definite (Cholesky).
Matrix cholesky_solve(const Matrix& a, const Matrix& b);

}  // namespace tra::eigensolve
