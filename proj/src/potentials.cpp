#include "tra/potentials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tra::potentials {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw std::domain_error("potentials: " + msg); }

}  // namespace

ShortRangeParams ShortRangeParams::from_u(double u0, double u1, double ur, double lambda) {
    double s = 0.5 * lambda * lambda;
    return {u0 * s, u1 * s, ur * s, lambda};
}

double PotentialSpec::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) fail("missing parameter " + key);
    return it->second;
}

PotentialSpec make_short_range(const ShortRangeParams& p) {
    if (p.lambda <= 0.0) fail("short-range requires lambda > 0");
    if (p.vr < 0.0) fail("short-range requires VR >= 0");
    return {"short_range", {{"v0", p.v0}, {"v1", p.v1}, {"vr", p.vr}, {"lambda", p.lambda}}, 0.0, kInf, ""};
}

PotentialSpec make_short_range_deformed(double strength, double gamma, double lambda) {
    if (lambda <= 0.0) fail("eq101 requires lambda > 0");
    if (gamma <= 0.0 || gamma >= 1.0) fail("eq101 requires 0 < gamma < 1");
    return {"short_range_deformed", {{"v1", strength}, {"gamma", gamma}, {"lambda", lambda}}, 0.0, kInf, ""};
}

double potential_eval(const PotentialSpec& spec, double x) {
    if (!(x > spec.x_lo && x < spec.x_hi)) fail("x outside potential domain for " + spec.name);
    auto get = [&](const char* k) { return spec.param(k); };

    if (spec.name == "short_range") {
        double l = get("lambda");
        double ex = std::exp(l * x), emx = std::exp(-l * x);
        return (get("v0") + get("v1") * (1.0 - 2.0 * emx) + get("vr") / (1.0 - emx)) / (ex - 1.0);
    }
    if (spec.name == "short_range_deformed") {
        double l = get("lambda");
        return get("v1") * (std::exp(-l * x) - get("gamma")) / (std::exp(l * x) - 1.0);
    }
    if (spec.name == "spherical_oscillator") return 0.5 * get("w4") * x * x;
    if (spec.name == "coulomb") {
        double z = get("Z");
        return -z * z / x + 0.5 * z * z * z * z;
    }
    if (spec.name == "morse") {
        double a = get("alpha");
        return get("v0") + get("v1") * std::exp(-2.0 * a * x) - get("v2") * std::exp(-a * x);
    }
    if (spec.name == "trig_scarf") {
        double a = get("alpha"), s = std::sin(a * x);
        return get("v0") + get("v1") / (s * s) - get("v2") * std::cos(a * x) / (s * s);
    }
    if (spec.name == "hyp_scarf") {
        double a = get("alpha"), se = 1.0 / std::cosh(a * x);
        return get("v0") + get("v1") * se * se + get("v2") * se * std::tanh(a * x);
    }
    if (spec.name == "rosen_morse_1") {
        double a = get("alpha"), c = std::cos(a * x);
        return get("v0") + get("v1") * std::tan(a * x) + get("v2") / (c * c);
    }
    if (spec.name == "rosen_morse_2") {
        double a = get("alpha"), se = 1.0 / std::cosh(a * x);
        return get("v0") + get("v1") * std::tanh(a * x) - get("v2") * se * se;
    }
    if (spec.name == "rosen_morse_2_singular") {
        double a = get("alpha"), cs = 1.0 / std::sinh(a * x);
        return get("v0") + get("v1") * cs * cs - get("v2") * cs / std::tanh(a * x);
    }
    if (spec.name == "eckart") {
        double a = get("alpha"), cs = 1.0 / std::sinh(a * x);
        return get("v0") - get("v1") / std::tanh(a * x) + get("v2") * cs * cs;
    }
    if (spec.name == "poschl_teller_1") {
        double a = get("alpha"), c = std::cos(a * x), s = std::sin(a * x);
        return -get("v0") + get("v1") / (c * c) + get("v2") / (s * s);
    }
    if (spec.name == "poschl_teller_2") {
        double a = get("alpha"), se = 1.0 / std::cosh(a * x), cs = 1.0 / std::sinh(a * x);
        return get("v0") - get("v1") * se * se + get("v2") * cs * cs;
    }
    fail("unknown potential " + spec.name);
}

double transformed_potential(const PotentialSpec& spec, const basis::CoordinateMap& map, double y) {
    if (spec.name == "short_range" && map.kind == basis::MapKind::ShiftedExp) {
        if (y <= -1.0 || y >= 1.0) fail("short-range transformed form is singular at y = +-1");
        return (1.0 - y) / (1.0 + y) *
               (spec.param("v0") + spec.param("v1") * y + 2.0 * spec.param("vr") / (1.0 + y));
    }
    if (spec.name == "spherical_oscillator" && map.kind == basis::MapKind::Quadratic) {
        double l = map.lambda;
        return 0.5 * spec.param("w4") / (l * l) * y;
    }
    // generic pull-back through the inverse map
    double x = basis::map_invert(map, y);
    return potential_eval(spec, x);
}

std::vector<GridPoint> potential_grid(const PotentialSpec& spec, double x_lo, double x_hi,
                                      int n_points) {
    if (n_points < 2) throw std::invalid_argument("potential_grid: need at least 2 points");
    if (!(x_lo < x_hi)) throw std::invalid_argument("potential_grid: need x_lo < x_hi");
    if (!(x_lo > spec.x_lo && x_hi < spec.x_hi)) fail("grid outside potential domain");
    std::vector<GridPoint> out(n_points);
    for (int i = 0; i < n_points; ++i) {
        double x = x_lo + (x_hi - x_lo) * i / (n_points - 1);
        out[i] = {x, potential_eval(spec, x)};
    }
    return out;
}

double deformed_zero_crossing(double gamma, double lambda) { return -std::log(gamma) / lambda; }

double deformed_extremum(double gamma, double lambda) {
    return -std::log(1.0 - std::sqrt(1.0 - gamma)) / lambda;
}

std::vector<CatalogEntry> catalog(double v0, double v1, double v2, double alpha) {
    using basis::make_map;
    using basis::MapKind;
    std::vector<CatalogEntry> out;
    auto add = [&](PotentialSpec spec, bool has_map, basis::CoordinateMap map,
                   const std::string& notes) {
        CatalogEntry e{std::move(spec), has_map, map, notes};
        e.spec.notes = notes;
        out.push_back(std::move(e));
    };
    basis::CoordinateMap none = make_map(MapKind::Linear, 1.0);

    add({"spherical_oscillator", {{"w4", v0}}, 0.0, kInf, ""}, true,
        make_map(MapKind::Quadratic, alpha), "");
    add({"coulomb", {{"Z", v0}}, 0.0, kInf, ""}, true, make_map(MapKind::Linear, alpha), "");
    add({"morse", {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}}, -kInf, kInf, ""}, true,
        make_map(MapKind::Exp, alpha), "");
    add({"trig_scarf", {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}}, 0.0, kPi / alpha, ""},
        true, make_map(MapKind::Sin, alpha),
        "catalog stores y = sin(pi x / L) on the symmetric interval; the analytic table uses "
        "y = cos(alpha x) on (0, pi/alpha) - the two grids disagree and the entry is flagged");
    add({"hyp_scarf", {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}}, -kInf, kInf, ""},
        true, make_map(MapKind::TanhSq, alpha), "");
    add({"rosen_morse_1",
         {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}},
         -0.5 * kPi / alpha,
         0.5 * kPi / alpha,
         ""},
        false, none,
        "no shipped map; domain restricted to the principal branch of tan");
    add({"rosen_morse_2", {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}}, -kInf, kInf, ""},
        true, make_map(MapKind::Tanh, alpha), "");
    add({"rosen_morse_2_singular",
         {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}},
         0.0,
         kInf,
         ""},
        false, none, "no shipped map");
    add({"eckart", {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}}, 0.0, kInf, ""}, true,
        make_map(MapKind::ShiftedExp, alpha), "");
    add({"poschl_teller_1",
         {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}},
         0.0,
         0.5 * kPi / alpha,
         ""},
        true, make_map(MapKind::SinSq, alpha), "");
    add({"poschl_teller_2", {{"v0", v0}, {"v1", v1}, {"v2", v2}, {"alpha", alpha}}, 0.0, kInf, ""},
        true, make_map(MapKind::TanhSq, alpha), "");
    return out;
}

}  // namespace tra::potentials
