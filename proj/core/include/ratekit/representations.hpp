#pragma once

#include "ratekit/mellin.hpp"

namespace ratekit {

// Exact Meijer-G representation of a family with integer m = delta/rho:
//   I = prefactor * G(z), with the three shapes
//   I1     -> G^{m+1,0}_{0,m+1}[ a b^m / m^m        | 0, 1/m, .., (m-1)/m, alpha/delta ]
//   I1Beta -> G^{m+1,1}_{1,m+1}[ a(beta-1) b^m/m^m  | a1 ; same lower ],
//             a1 = (beta-2)/(beta-1) + alpha/delta
//   I2Beta -> G^{m+1,0}_{1,m+1}[ a(1-beta) b^m/m^m  | a1 ; same lower ],
//             a1 = (2-beta)/(1-beta) + alpha/delta
// The prefactor is kept in log space; for beta near 1 the Gamma factors in it
// explode while the G value compensates, so it is only safe to exponentiate
// jointly with the G terms.
struct ReducedForm {
  MeijerGParams g;
  double log_prefactor = 0.0;
  int m = 1;
  double z = 1.0;

  double prefactor() const { return std::exp(log_prefactor); }
};

// Throws NonIntegerRatioError unless delta/rho is within 1e-12 of a positive
// integer (snapped), UnsupportedVariantError for I2.
ReducedForm reduce(const IntegralSpec& spec);

enum class EvalMethod { Auto, Quadrature, Contour, Series };

const char* eval_method_name(EvalMethod m);
EvalMethod eval_method_from_name(const std::string& name);

// Unified evaluation. Auto runs quadrature plus one Mellin-side route
// (residue series when m is integral and the poles are simple, contour
// otherwise), checks agreement within 10x the combined error estimates and
// returns the Mellin-side result; disagreement throws MethodDisagreement.
// Generic-cutoff I2 only supports Quadrature (Auto degrades to it).
EvalResult eval(const IntegralSpec& spec, EvalMethod method, double rel_tol = 1e-9);

// Closed-form Mellin moment of the family in the b-direction:
//   int_0^inf u^{s-1} I(b = u^rho) du
// equals prefactor * phi(s) * kappa^{-s/delta} with kappa the kernel rate
// (a, a(beta-1) or a(1-beta)); spec.b is ignored. Throws StripViolationError
// outside the convergence strip Re(s) > 0, Re(alpha + s) > 0 (and, for
// I1Beta, Re(alpha + s) < delta/(beta-1)).
Complex mellin_moment(const IntegralSpec& spec, Complex s);

}  // namespace ratekit
