#pragma once

#include <string>
#include <vector>

#include "tra/orthopoly.hpp"

namespace tra::basis {

enum class MapKind { Quadratic, Linear, Exp, ShiftedExp, Tanh, TanhSq, Sin, SinSq };

// Coordinate transform y(x) with inverse-length scale lambda.  Exp carries an
// extra amplitude and a decay flag (y = scale * e^{+-lambda x}).
struct CoordinateMap {
    MapKind kind;
    double lambda = 1.0;
    double scale = 1.0;
    bool decay = false;

    struct Span {
        double lo, hi;
    };
    Span x_domain() const;
    Span y_range() const;
};

CoordinateMap make_map(MapKind kind, double lambda, double scale = 1.0, bool decay = false);

struct MapPoint {
    double y, dy, d2y;
};

// y(x) with first and second derivatives.  Throws std::domain_error outside
// the map's x-domain.
MapPoint map_eval(const CoordinateMap& map, double x);

// x(y); all shipped maps are monotone on their domain.
double map_invert(const CoordinateMap& map, double y);

enum class BasisFamily { Jacobi, Laguerre };

// Square-integrable basis element
//   Jacobi:   A_n (1-y)^alpha (1+y)^beta P_n^{(mu,nu)}(y)
//   Laguerre: A_n y^alpha e^{-beta y} L_n^{nu}(y)
// measure_const is the constant folded into A_n by the map's integration
// measure (2*lambda for the Quadratic map, lambda for Linear/Exp, 1 when the
// plain polynomial-weight normalization is wanted).
struct BasisSpec {
    BasisFamily family;
    double mu = 0.0;  // Jacobi only
    double nu = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    CoordinateMap map;
    double measure_const = 1.0;

    orthopoly::PolynomialFamily polynomial() const;
    double norm_const(int n) const;  // A_n
    void validate() const;
};

BasisSpec make_jacobi_basis(double mu, double nu, double alpha, double beta,
                            const CoordinateMap& map, double measure_const = 1.0);
BasisSpec make_laguerre_basis(double nu, double alpha, double beta, const CoordinateMap& map);

// phi_n(x)
double basis_eval(const BasisSpec& spec, int n, double x);

// phi_0..phi_{n_max} at the transformed coordinate y (weight factor included)
std::vector<double> basis_eval_all_y(const BasisSpec& spec, int n_max, double y);

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss rule for the family weight, built from the recursion coefficients
// (nodes are position-matrix eigenvalues, weights from first eigenvector
// components).  Exact for polynomials of degree <= 2N-1.
Quadrature gauss_quadrature(const orthopoly::PolynomialFamily& fam, int n);

// Moments of the family weight against y^k, by closed-form expansion.
double weight_moment(const orthopoly::PolynomialFamily& fam, int k);

// <phi_n | phi_m> under the map's dx measure, by Gauss quadrature with
// N_quad nodes.  Doubling N_quad must move the value by < 1e-9, otherwise
// std::runtime_error.
double overlap(const BasisSpec& spec, int n, int m, int n_quad);

// full overlap matrix for indices < count, sharing one quadrature build;
// same doubling contract as overlap()
std::vector<std::vector<double>> overlap_matrix(const BasisSpec& spec, int count, int n_quad);

}  // namespace tra::basis
