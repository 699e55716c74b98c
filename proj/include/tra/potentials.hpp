#pragma once

#include <map>
#include <string>
#include <vector>

#include "tra/basis.hpp"

namespace tra::potentials {

// Short-range three-parameter potential on (0, inf):
//   V(x) = [V0 + V1 (1 - 2 e^{-lambda x}) + VR / (1 - e^{-lambda x})] / (e^{lambda x} - 1)
// Internally the solver path works with the dimensionless u_i = (2/lambda^2) V_i.
struct ShortRangeParams {
    double v0, v1, vr;
    double lambda;

    double u0() const { return 2.0 * v0 / (lambda * lambda); }
    double u1() const { return 2.0 * v1 / (lambda * lambda); }
    double ur() const { return 2.0 * vr / (lambda * lambda); }

    static ShortRangeParams from_u(double u0, double u1, double ur, double lambda);
};

struct PotentialSpec {
    std::string name;
    std::map<std::string, double> params;
    double x_lo, x_hi;  // open interval for evaluation
    std::string notes;  // catalog caveats

    double param(const std::string& key) const;
};

PotentialSpec make_short_range(const ShortRangeParams& p);
// deformed one-strength form: V(x) = strength (e^{-lambda x} - gamma)/(e^{lambda x} - 1)
PotentialSpec make_short_range_deformed(double strength, double gamma, double lambda);

// Catalog of the standard solvable potentials (spherical oscillator, Coulomb,
// Morse, Scarf, Rosen-Morse, Eckart, Poschl-Teller), each with its stated
// domain and, where defined, the compatible coordinate map.
struct CatalogEntry {
    PotentialSpec spec;
    bool has_map = false;
    basis::CoordinateMap map;
    std::string notes;
};
std::vector<CatalogEntry> catalog(double v0, double v1, double v2, double alpha);

double potential_eval(const PotentialSpec& spec, double x);

// V expressed in the transformed coordinate; pull-back V(y(x)) == V(x).
double transformed_potential(const PotentialSpec& spec, const basis::CoordinateMap& map, double y);

struct GridPoint {
    double x, v;
};
std::vector<GridPoint> potential_grid(const PotentialSpec& spec, double x_lo, double x_hi,
                                      int n_points);

// zero crossing x0 and extremum location x1 of the deformed form
double deformed_zero_crossing(double gamma, double lambda);
double deformed_extremum(double gamma, double lambda);

}  // namespace tra::potentials
