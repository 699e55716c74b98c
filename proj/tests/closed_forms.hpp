// Test-only oracle: terminating hypergeometric closed forms evaluated in
// extended precision, independent of the recursion engine they check.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace closed_forms {

using LD = long double;
using CLD = std::complex<long double>;

inline LD hyp_ld(const std::vector<LD>& num, const std::vector<LD>& den, LD z, int n) {
    LD sum = 1.0L, term = 1.0L;
    for (int k = 0; k < n; ++k) {
        for (LD a : num) term *= a + k;
        for (LD b : den) term /= b + k;
        term *= z / (k + 1);
        sum += term;
    }
    return sum;
}

inline CLD hyp_cld(const std::vector<CLD>& num, const std::vector<CLD>& den, CLD z, int n) {
    CLD sum = 1.0L, term = 1.0L;
    for (int k = 0; k < n; ++k) {
        for (const CLD& a : num) term *= a + static_cast<LD>(k);
        for (const CLD& b : den) term /= b + static_cast<LD>(k);
        term *= z / static_cast<LD>(k + 1);
        sum += term;
    }
    return sum;
}

inline LD poch_ld(LD a, int n) {
    LD p = 1.0L;
    for (int k = 0; k < n; ++k) p *= a + k;
    return p;
}

// Jacobi via the terminating 2F1; the argument is reflected through the
// parity identity so the series argument stays in [0, 1/2] and the sum is
// well conditioned on the whole support.
inline double jacobi_closed(double mu_, double nu_, double y_, int n) {
    LD mu = mu_, nu = nu_, y = y_;
    LD sign = 1.0L;
    if (y < 0.0L) {
        std::swap(mu, nu);
        y = -y;
        sign = n % 2 == 0 ? 1.0L : -1.0L;
    }
    LD c = std::exp(std::lgamma(static_cast<LD>(n) + mu + 1.0L) -
                    std::lgamma(static_cast<LD>(n) + 1.0L) - std::lgamma(mu + 1.0L));
    LD f = hyp_ld({static_cast<LD>(-n), n + mu + nu + 1.0L}, {mu + 1.0L}, 0.5L * (1.0L - y), n);
    return static_cast<double>(sign * c * f);
}

inline double laguerre_closed(double nu_, double y_, int n) {
    LD nu = nu_, y = y_;
    LD c = std::exp(std::lgamma(static_cast<LD>(n) + nu + 1.0L) -
                    std::lgamma(static_cast<LD>(n) + 1.0L) - std::lgamma(nu + 1.0L));
    return static_cast<double>(c * hyp_ld({static_cast<LD>(-n)}, {nu + 1.0L}, y, n));
}

inline double mp_closed(double mu_, double theta_, double z_, int n) {
    LD mu = mu_, th = theta_, z = z_;
    LD c = std::sqrt(poch_ld(2.0L * mu, n) / std::exp(std::lgamma(static_cast<LD>(n) + 1.0L)));
    CLD arg = CLD(1.0L, 0.0L) - std::exp(CLD(0.0L, -2.0L * th));
    CLD f = hyp_cld({CLD(-n, 0.0L), CLD(mu, z)}, {CLD(2.0L * mu, 0.0L)}, arg, n);
    CLD v = c * std::exp(CLD(0.0L, n * th)) * f;
    return static_cast<double>(v.real());
}

inline double hyp_mp_closed(double mu_, double theta_, double s_, int n) {
    LD mu = mu_, th = theta_, s = s_;
    LD c = std::sqrt(poch_ld(2.0L * mu, n) / std::exp(std::lgamma(static_cast<LD>(n) + 1.0L)));
    LD f = hyp_ld({static_cast<LD>(-n), mu + s}, {2.0L * mu}, 1.0L - std::exp(-2.0L * th), n);
    return static_cast<double>(c * std::exp(static_cast<LD>(n) * th) * f);
}

inline double meixner_closed(double mu_, double beta_, double m_, int n) {
    LD mu = mu_, be = beta_, m = m_;
    LD c = std::sqrt(poch_ld(2.0L * mu, n) / std::exp(std::lgamma(static_cast<LD>(n) + 1.0L))) *
           std::pow(be, 0.5L * n);
    return static_cast<double>(c * hyp_ld({static_cast<LD>(-n), -m}, {2.0L * mu},
                                          1.0L - 1.0L / be, n));
}

inline double krawtchouk_closed(int N, double gamma_, double m_, int n) {
    LD ga = gamma_, m = m_;
    LD c = std::sqrt(std::exp(std::lgamma(static_cast<LD>(N) + 1.0L) -
                              std::lgamma(static_cast<LD>(n) + 1.0L) -
                              std::lgamma(static_cast<LD>(N - n) + 1.0L))) *
           std::pow(ga / (1.0L - ga), 0.5L * n);
    return static_cast<double>(
        c * hyp_ld({static_cast<LD>(-n), -m}, {static_cast<LD>(-N)}, 1.0L / ga, n));
}

inline double cdh_closed(double mu_, double alpha_, double beta_, double z_, int n) {
    LD mu = mu_, al = alpha_, be = beta_, z = z_;
    LD c = std::sqrt(poch_ld(mu + al, n) * poch_ld(mu + be, n) /
                     (std::exp(std::lgamma(static_cast<LD>(n) + 1.0L)) * poch_ld(al + be, n)));
    CLD f = hyp_cld({CLD(-n, 0.0L), CLD(mu, z), CLD(mu, -z)},
                    {CLD(mu + al, 0.0L), CLD(mu + be, 0.0L)}, CLD(1.0L, 0.0L), n);
    return static_cast<double>((c * f).real());
}

inline double dual_hahn_closed(int N, double alpha_, double beta_, double m_, int n) {
    LD al = alpha_, be = beta_, m = m_;
    LD c = std::sqrt(poch_ld(al + 1.0L, n) * poch_ld(be + 1.0L, N - n) /
                     (std::exp(std::lgamma(static_cast<LD>(n) + 1.0L)) *
                      std::exp(std::lgamma(static_cast<LD>(N - n) + 1.0L))));
    return static_cast<double>(c * hyp_ld({static_cast<LD>(-n), -m, m + al + be + 1.0L},
                                          {al + 1.0L, static_cast<LD>(-N)}, 1.0L, n));
}

}  // namespace closed_forms
