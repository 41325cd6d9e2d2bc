#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ratekit/errors.hpp"

namespace ratekit {

// The four integral families:
//   I1     : int_0^inf x^{alpha-1} exp(-a x^delta) exp(-b x^{-rho}) dx
//   I2     : same integrand truncated at a finite cutoff d
//   I1Beta : exp(-a x^delta) replaced by [1 + a(beta-1) x^delta]^{-1/(beta-1)}, beta > 1
//   I2Beta : kernel [1 - a(1-beta) x^delta]^{1/(1-beta)} on (0, d), beta < 1,
//            with d fixed at [1/(a(1-beta))]^{1/delta}
enum class Variant { I1, I2, I1Beta, I2Beta };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct IntegralSpec {
  Variant variant = Variant::I1;
  double alpha = 1.0;
  double a = 1.0;
  double b = 1.0;  // b = 0 accepted as a degenerate input for closed-form anchors
  double delta = 1.0;
  double rho = 1.0;
  double beta = std::numeric_limits<double>::quiet_NaN();  // pathway variants only
  std::optional<double> cutoff;                            // I2 only

  // Throws DomainError when any invariant is violated:
  //  - alpha, a, delta, rho > 0 and b >= 0
  //  - I1Beta requires beta > 1 and alpha < delta/(beta-1) (tail integrability)
  //  - I2Beta requires beta < 1; cutoff is derived, not supplied
  //  - I2 requires a finite positive cutoff
  void validate() const;

  bool is_pathway() const { return variant == Variant::I1Beta || variant == Variant::I2Beta; }

  // Upper integration limit: +inf, the supplied d, or the derived support edge.
  double upper_limit() const;
};

enum class Method { Quadrature, MellinBarnes, ResidueSeries };

const char* method_name(Method m);

struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  Method method = Method::Quadrature;
  long work = 0;  // integrand evaluations / contour nodes / series terms
};

}  // namespace ratekit
