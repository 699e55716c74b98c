#include "tra/basis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tra/eigensolve.hpp"
#include "tra/specfun.hpp"
#include "tra/waveop.hpp"

namespace tra::basis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void domain_fail(const std::string& msg) { throw std::domain_error("basis: " + msg); }

}  // namespace

CoordinateMap::Span CoordinateMap::x_domain() const {
    switch (kind) {
        case MapKind::Quadratic:
        case MapKind::Linear:
        case MapKind::ShiftedExp:
        case MapKind::TanhSq:
            return {0.0, kInf};
        case MapKind::Exp:
        case MapKind::Tanh:
            return {-kInf, kInf};
        case MapKind::Sin:
            return {-0.5 * kPi / lambda, 0.5 * kPi / lambda};
        case MapKind::SinSq:
            return {0.0, 0.5 * kPi / lambda};
    }
    return {0.0, 0.0};
}

CoordinateMap::Span CoordinateMap::y_range() const {
    switch (kind) {
        case MapKind::Quadratic:
        case MapKind::Linear:
        case MapKind::Exp:
            return {0.0, kInf};
        default:
            return {-1.0, 1.0};
    }
}

CoordinateMap make_map(MapKind kind, double lambda, double scale, bool decay) {
    if (lambda <= 0.0) domain_fail("map scale lambda must be positive");
    if (scale <= 0.0) domain_fail("map amplitude must be positive");
    return {kind, lambda, scale, decay};
}

MapPoint map_eval(const CoordinateMap& map, double x) {
    auto dom = map.x_domain();
    if (x < dom.lo || x > dom.hi) domain_fail("x outside map domain");
    double l = map.lambda;
    switch (map.kind) {
        case MapKind::Quadratic: {
            double y = l * x * l * x;
            return {y, 2.0 * l * l * x, 2.0 * l * l};
        }
        case MapKind::Linear:
            return {l * x, l, 0.0};
        case MapKind::Exp: {
            double s = map.decay ? -1.0 : 1.0;
            double y = map.scale * std::exp(s * l * x);
            return {y, s * l * y, l * l * y};
        }
        case MapKind::ShiftedExp: {
            double t = std::exp(-l * x);
            return {1.0 - 2.0 * t, 2.0 * l * t, -2.0 * l * l * t};
        }
        case MapKind::Tanh: {
            double y = std::tanh(l * x);
            double sech2 = 1.0 - y * y;
            return {y, l * sech2, -2.0 * l * l * y * sech2};
        }
        case MapKind::TanhSq: {
            double t = std::tanh(l * x);
            double sech2 = 1.0 - t * t;
            return {2.0 * t * t - 1.0, 4.0 * l * t * sech2, 4.0 * l * l * sech2 * (1.0 - 3.0 * t * t)};
        }
        case MapKind::Sin: {
            double y = std::sin(l * x);
            return {y, l * std::cos(l * x), -l * l * y};
        }
        case MapKind::SinSq: {
            double y = -std::cos(2.0 * l * x);
            return {y, 2.0 * l * std::sin(2.0 * l * x), -4.0 * l * l * y};
        }
    }
    domain_fail("unknown map");
}

double map_invert(const CoordinateMap& map, double y) {
    auto range = map.y_range();
    if (y < range.lo || y > range.hi) domain_fail("y outside map range");
    double l = map.lambda;
    switch (map.kind) {
        case MapKind::Quadratic:
            return std::sqrt(y) / l;
        case MapKind::Linear:
            return y / l;
        case MapKind::Exp: {
            if (y <= 0.0) domain_fail("Exp map inversion needs y > 0");
            double s = map.decay ? -1.0 : 1.0;
            return s * std::log(y / map.scale) / l;
        }
        case MapKind::ShiftedExp:
            if (y >= 1.0) domain_fail("ShiftedExp inversion needs y < 1");
            return -std::log(0.5 * (1.0 - y)) / l;
        case MapKind::Tanh:
            if (std::abs(y) >= 1.0) domain_fail("Tanh inversion needs |y| < 1");
            return std::atanh(y) / l;
        case MapKind::TanhSq:
            if (y >= 1.0) domain_fail("TanhSq inversion needs y < 1");
            return std::atanh(std::sqrt(0.5 * (1.0 + y))) / l;
        case MapKind::Sin:
            return std::asin(y) / l;
        case MapKind::SinSq:
            return 0.5 * std::acos(-y) / l;
    }
    domain_fail("unknown map");
}

orthopoly::PolynomialFamily BasisSpec::polynomial() const {
    if (family == BasisFamily::Jacobi) return orthopoly::make_jacobi(mu, nu);
    return orthopoly::make_laguerre(nu);
}

double BasisSpec::norm_const(int n) const {
    using std::lgamma;
    if (family == BasisFamily::Jacobi) {
        double lg = std::log(2.0 * n + mu + nu + 1.0) + lgamma(n + 1.0) + lgamma(n + mu + nu + 1.0) -
                    (mu + nu + 1.0) * std::log(2.0) - lgamma(n + nu + 1.0) - lgamma(n + mu + 1.0);
        return std::sqrt(measure_const) * std::exp(0.5 * lg);
    }
    return std::sqrt(measure_const) * std::exp(0.5 * (lgamma(n + 1.0) - lgamma(n + nu + 1.0)));
}

void BasisSpec::validate() const {
    if (family == BasisFamily::Jacobi) {
        if (alpha < 0.0 || beta < 0.0) domain_fail("Jacobi basis requires alpha, beta >= 0");
        if (mu <= -1.0 || nu <= -1.0) domain_fail("Jacobi basis requires mu, nu > -1");
    } else {
        if (nu <= -1.0) domain_fail("Laguerre basis requires nu > -1");
        if (alpha < 0.0) domain_fail("Laguerre basis requires alpha >= 0");
    }
    if (measure_const <= 0.0) domain_fail("measure constant must be positive");
}

BasisSpec make_jacobi_basis(double mu, double nu, double alpha, double beta,
                            const CoordinateMap& map, double measure_const) {
    BasisSpec s{BasisFamily::Jacobi, mu, nu, alpha, beta, map, measure_const};
    s.validate();
    return s;
}

BasisSpec make_laguerre_basis(double nu, double alpha, double beta, const CoordinateMap& map) {
    double mc = map.kind == MapKind::Quadratic ? 2.0 * map.lambda : map.lambda;
    BasisSpec s{BasisFamily::Laguerre, 0.0, nu, alpha, beta, map, mc};
    s.validate();
    return s;
}

namespace {

double weight_factor(const BasisSpec& spec, double y) {
    if (spec.family == BasisFamily::Jacobi)
        return std::pow(1.0 - y, spec.alpha) * std::pow(1.0 + y, spec.beta);
    return std::pow(y, spec.alpha) * std::exp(-spec.beta * y);
}

}  // namespace

double basis_eval(const BasisSpec& spec, int n, double x) {
    spec.validate();
    MapPoint p = map_eval(spec.map, x);
    auto poly = orthopoly::eval_sequence(spec.polynomial(), p.y, n);
    return spec.norm_const(n) * weight_factor(spec, p.y) * poly[n];
}

std::vector<double> basis_eval_all_y(const BasisSpec& spec, int n_max, double y) {
    auto poly = orthopoly::eval_sequence(spec.polynomial(), y, n_max);
    double w = weight_factor(spec, y);
    std::vector<double> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = spec.norm_const(n) * w * poly[n];
    return out;
}

Quadrature gauss_quadrature(const orthopoly::PolynomialFamily& fam, int n) {
    if (n < 1) throw std::invalid_argument("gauss_quadrature: need n >= 1");
    if (fam.family != orthopoly::Family::JacobiP && fam.family != orthopoly::Family::LaguerreL)
        throw std::invalid_argument("gauss_quadrature: Jacobi and Laguerre families only");
    SymTridiag jm = waveop::position_matrix(fam, n);
    auto eig = eigensolve::tridiag_nodes_first_components(jm);
    Quadrature q;
    q.nodes = eig.values;
    q.weights.resize(n);
    double mu0 = weight_moment(fam, 0);
    for (int i = 0; i < n; ++i) q.weights[i] = mu0 * eig.first[i] * eig.first[i];
    return q;
}

double weight_moment(const orthopoly::PolynomialFamily& fam, int k) {
    if (fam.family == orthopoly::Family::LaguerreL) {
        double nu = fam.param("nu");
        return std::exp(std::lgamma(nu + k + 1.0));
    }
    if (fam.family != orthopoly::Family::JacobiP)
        throw std::invalid_argument("weight_moment: Jacobi and Laguerre families only");
    long double mu = fam.param("mu"), nu = fam.param("nu");
    // m_{k+1} = [(nu-mu) m_k + k m_{k-1}] / (mu+nu+k+2), from the vanishing
    // boundary integral of d/dy[(1-y)^{mu+1}(1+y)^{nu+1} y^k]
    long double m0 = std::exp((mu + nu + 1.0L) * std::log(2.0L) + std::lgamma(mu + 1.0L) +
                              std::lgamma(nu + 1.0L) - std::lgamma(mu + nu + 2.0L));
    if (k == 0) return static_cast<double>(m0);
    long double prev = m0;
    long double cur = (nu - mu) / (mu + nu + 2.0L) * m0;
    for (int j = 1; j < k; ++j) {
        long double next = ((nu - mu) * cur + j * prev) / (mu + nu + j + 2.0L);
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

namespace {

std::vector<std::vector<double>> overlap_with(const BasisSpec& spec, int count, int n_quad) {
    auto fam = spec.polynomial();
    Quadrature q = gauss_quadrature(fam, n_quad);
    std::vector<std::vector<double>> out(count, std::vector<double>(count, 0.0));
    std::vector<double> an(count);
    for (int k = 0; k < count; ++k) an[k] = spec.norm_const(k);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        double y = q.nodes[i];
        auto poly = orthopoly::eval_sequence(fam, y, count - 1);
        // derivative of the map at this node, via x(y)
        double x = map_invert(spec.map, y);
        MapPoint p = map_eval(spec.map, x);
        double extra;
        if (spec.family == BasisFamily::Jacobi)
            extra = std::pow(1.0 - y, 2.0 * spec.alpha - spec.mu) *
                    std::pow(1.0 + y, 2.0 * spec.beta - spec.nu);
        else
            extra = std::pow(y, 2.0 * spec.alpha - spec.nu) * std::exp((1.0 - 2.0 * spec.beta) * y);
        double wq = q.weights[i] * extra / p.dy;
        for (int a = 0; a < count; ++a)
            for (int b = a; b < count; ++b) out[a][b] += wq * an[a] * an[b] * poly[a] * poly[b];
    }
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < a; ++b) out[a][b] = out[b][a];
    return out;
}

}  // namespace

std::vector<std::vector<double>> overlap_matrix(const BasisSpec& spec, int count, int n_quad) {
    spec.validate();
    if (count < 1 || n_quad < 2 * count + 2)
        throw std::invalid_argument("overlap_matrix: N_quad too small");
    auto coarse = overlap_with(spec, count, n_quad);
    auto fine = overlap_with(spec, count, 2 * n_quad);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            if (std::abs(fine[a][b] - coarse[a][b]) > 1e-9 * std::max(1.0, std::abs(fine[a][b])))
                throw std::runtime_error("overlap_matrix: quadrature did not converge under doubling");
    return fine;
}

double overlap(const BasisSpec& spec, int n, int m, int n_quad) {
    spec.validate();
    if (n_quad < n + m + 2) throw std::invalid_argument("overlap: N_quad too small");
    int count = std::max(n, m) + 1;
    auto coarse = overlap_with(spec, count, n_quad);
    auto fine = overlap_with(spec, count, 2 * n_quad);
    if (std::abs(fine[n][m] - coarse[n][m]) > 1e-9 * std::max(1.0, std::abs(fine[n][m])))
        throw std::runtime_error("overlap: quadrature did not converge under doubling");
    return fine[n][m];
}

}  // namespace tra::basis
