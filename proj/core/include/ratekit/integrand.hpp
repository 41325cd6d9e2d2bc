#pragma once

#include "ratekit/integral_spec.hpp"

namespace ratekit {

// Pointwise integrand x^{alpha-1} K(x) exp(-b x^{-rho}) of the family.
// Throws DomainError for x <= 0 or x outside the support of bounded variants.
double integrand(const IntegralSpec& spec, double x);

// log of the integrand (well defined: the integrand is positive inside the
// support); -inf at support edges is returned as -HUGE_VAL, not thrown.
double log_integrand(const IntegralSpec& spec, double x);

// Location of the interior maximum of the integrand, found by bracketing and
// bisection on the derivative of log_integrand in log x. Falls back to the
// kernel scale (a x^delta ~ 1) when the integrand is monotone.
double integrand_peak(const IntegralSpec& spec);

// Adaptive quadrature of the family over its full domain.
// rel_tol must lie in [1e-13, 1e-2]. Domain is split at the interior maximum;
// the x -> 0 end is integrated in t = x^{-rho} and the infinite tails in
// u = x^delta (I1) or u = 1/x (I1Beta), so the barrier factor and the decay
// are resolved without sampling raw x near the edges.
// Throws ConvergenceError when the error estimate stagnates above tolerance.
EvalResult quad_eval(const IntegralSpec& spec, double rel_tol);

// |g'(x) + a g(x)^beta| for g(x) = x^alpha0 [1 - a(1-beta) x]^{1/(1-beta)},
// with g' taken by a centered finite difference of step fd_step. The
// derivative identity is exact for alpha0 = 0; beta < 1 required.
double tsallis_derivative_residual(double alpha0, double a, double beta, double x,
                                   double fd_step = 1e-6);

}  // namespace ratekit
