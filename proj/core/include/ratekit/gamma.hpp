#pragma once

#include <complex>

#include "ratekit/errors.hpp"

namespace ratekit {

using Complex = std::complex<double>;

// Poles of Gamma are detected within this absolute distance of 0, -1, -2, ...
inline constexpr double kGammaPoleTolerance = 1e-13;

// log Gamma(z), analytic continuation that is real on the positive axis.
// Stirling with recurrence push for Re(z) >= 0.5, reflection otherwise.
// Accuracy: |error| <= ~1e-13 * max(1, |log Gamma(z)|) for |z| <= 1e6.
// Throws PoleError within kGammaPoleTolerance of a nonpositive integer.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

// log|Gamma(x)| and the sign of Gamma(x) for real x (sign is -1 between odd
// and even negative integers). Throws PoleError at nonpositive integers.
struct SignedLogGamma {
  long double log_abs;
  int sign;
};
SignedLogGamma log_gamma_signed(long double x);

// Residual of the Gauss multiplication formula
//   Gamma(mz) = (2 pi)^{(1-m)/2} m^{mz-1/2} Gamma(z) Gamma(z+1/m) ... Gamma(z+(m-1)/m)
// as |log lhs - log rhs| with the imaginary part reduced modulo 2 pi.
// Exact arithmetic gives 0.
double gauss_multiplication_residual(Complex z, int m);

// Gamma(x + a1) * x^{a2 - a1} / Gamma(x + a2), computed in log space.
// Tends to 1 as x -> +infinity, with a first-order 1/x Stirling correction.
Complex asymptotic_gamma_ratio(double x, Complex a1, Complex a2);

}  // namespace ratekit
