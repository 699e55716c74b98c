#include "tra/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace tra::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, 9-term coefficient set; ~15 significant digits on the
// right half-plane in double precision.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

bool near_nonpositive_integer(Complex z) {
    if (std::abs(z.imag()) > 1e-14) return false;
    double r = z.real();
    if (r > 0.4) return false;
    return std::abs(r - std::round(r)) < 1e-14;
}

Complex log_gamma_core(Complex z) {
    // valid for Re(z) >= 0.5
    Complex zm1 = z - 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (zm1 + static_cast<double>(i));
    Complex t = zm1 + kLanczosG + 0.5;
    return (zm1 + 0.5) * std::log(t) - t + 0.5 * std::log(2.0 * kPi) + std::log(x);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_core(1.0 - z);
    }
    return log_gamma_core(z);
}

double arg_gamma(Complex z) { return log_gamma(z).imag(); }

double abs_gamma(Complex z) { return std::exp(log_gamma(z).real()); }

double pochhammer(double a, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be nonnegative");
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + k;
    if (!std::isfinite(p)) throw std::range_error("pochhammer: overflow");
    return p;
}

Complex pochhammer(Complex a, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be nonnegative");
    Complex p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + static_cast<double>(k);
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
        throw std::range_error("pochhammer: overflow");
    return p;
}

Complex hyp_terminating(const std::vector<Complex>& num, const std::vector<Complex>& den,
                        Complex z, int n) {
    if (n < 0) throw std::invalid_argument("hyp_terminating: n must be nonnegative");
    if (num.empty() || std::abs(num[0] + static_cast<double>(n)) > 1e-12)
        throw std::invalid_argument("hyp_terminating: first numerator parameter must be -n");
    Complex sum = 1.0;
    Complex term = 1.0;
    for (int k = 0; k < n; ++k) {
        for (const Complex& a : num) term *= a + static_cast<double>(k);
        for (const Complex& b : den) {
            Complex bk = b + static_cast<double>(k);
            if (bk == Complex(0.0, 0.0))
                throw std::domain_error("hyp_terminating: denominator Pochhammer vanished");
            term /= bk;
        }
        term *= z / static_cast<double>(k + 1);
        sum += term;
    }
    return sum;
}

double hyp_terminating(const std::vector<double>& num, const std::vector<double>& den,
                       double z, int n) {
    std::vector<Complex> cn(num.begin(), num.end());
    std::vector<Complex> cd(den.begin(), den.end());
    // all-real inputs stay exactly real: every imaginary part is 0*finite
    return hyp_terminating(cn, cd, Complex(z, 0.0), n).real();
}

}  // namespace tra::specfun
