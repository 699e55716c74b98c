#pragma once

#include <complex>
#include <vector>

namespace tra::specfun {

using Complex = std::complex<double>;

// Principal-branch log Gamma on the complex plane, Lanczos approximation with
// reflection for Re(z) < 0.5.  exp(log_gamma(x)) == Gamma(x) for real x > 0.
// Throws std::domain_error at the poles z = 0, -1, -2, ...
Complex log_gamma(Complex z);

// arg Gamma(z) = Im log_gamma(z)
double arg_gamma(Complex z);

// |Gamma(z)|
double abs_gamma(Complex z);

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
// Throws std::range_error on overflow.
double pochhammer(double a, int n);
Complex pochhammer(Complex a, int n);

// Terminating generalized hypergeometric sum
//   pFq(num; den; z) = sum_{k=0}^{n} [prod (num_i)_k / prod (den_j)_k] z^k / k!
// The first numerator parameter must equal -n.  Throws std::domain_error if a
// denominator Pochhammer vanishes before the series terminates.
Complex hyp_terminating(const std::vector<Complex>& num, const std::vector<Complex>& den,
                        Complex z, int n);
double hyp_terminating(const std::vector<double>& num, const std::vector<double>& den,
                       double z, int n);

}  // namespace tra::specfun
