#pragma once

#include <vector>

#include "ratekit/gamma.hpp"
#include "ratekit/integral_spec.hpp"

namespace ratekit {

// One gamma factor of a Mellin-Barnes integrand; scale > 0 always.
struct GammaFactor {
  Complex shift;
  double scale = 1.0;
};

// Describes phi(s) * base^{-s} with
//   phi(s) = prod Gamma(shift + scale s)        [num]
//          * prod Gamma(shift - scale s)        [reflected]
//          / prod Gamma(shift + scale s)        [den]
//          / prod Gamma(shift - scale s)        [den_reflected]
// plus an overall exp(log_prefactor) carried in log space so that huge or
// tiny prefactors (beta near 1) never overflow on their own.
struct MellinIntegrand {
  std::vector<GammaFactor> num;
  std::vector<GammaFactor> den;
  std::vector<GammaFactor> reflected;
  std::vector<GammaFactor> den_reflected;
  double base = 1.0;
  double log_prefactor = 0.0;

  Complex log_phi(Complex s) const;

  // Rightmost pole abscissa of the num factors (the contour must stay right
  // of it) and leftmost pole abscissa of the reflected factors (+inf if none).
  double left_pole_bound() const;
  double right_pole_bound() const;

  // sum of scales, numerator minus denominator; the line integrand decays
  // like exp(-pi * mass * |t| / 2), so this must be positive.
  double decay_mass() const;
};

// Vertical-line discretization: Re s = c, |Im s| <= half_height, `nodes`
// equally spaced points (kept odd so the half-resolution subgrid aligns).
struct ContourConfig {
  double c = 0.75;
  double half_height = 40.0;
  int nodes = 2001;
};

// Chooses abscissa, truncation height and node count for a target accuracy.
// Abscissa: 0.75 pushed right of the num poles, clipped into the admissible
// strip when a reflected factor bounds it on the right.
ContourConfig plan_contour(const MellinIntegrand& phi, double tol);

// A second admissible abscissa, distinct from c, for Cauchy-independence
// checks: shifted by 0.35 when the strip is unbounded to the right,
// otherwise by a fixed fraction of the roomier side.
double shifted_abscissa(const MellinIntegrand& phi, double c);

// Raw diagnostics of one contour evaluation.
struct ContourStats {
  double imag_abs = 0.0;        // |Im| of the full sum (must vanish for real data)
  double discretization = 0.0;  // estimated fine-grid aliasing error
  double truncation = 0.0;      // bound on the |t| > T remainder
};

// (1/2pi) int_{-T}^{T} phi(c+it) base^{-c-it} dt by the trapezoid rule in
// log-gamma space. Returns the real part; |Im|, the (geometric-convergence
// adjusted) half-resolution discrepancy and a truncation bound all feed
// abs_error_estimate. Throws ContourError if c violates pole separation,
// TruncationError when the endpoint mass shows the contour was cut short.
EvalResult contour_eval(const MellinIntegrand& phi, const ContourConfig& cfg,
                        ContourStats* stats = nullptr);

// Meijer G parameters in the classical convention:
//   G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q)
//     = (1/2pi i) int_L phi(s) z^{-s} ds,
//   phi(s) = prod_{j<=m} Gamma(b_j+s) prod_{j<=n} Gamma(1-a_j-s)
//          / [prod_{j>m} Gamma(1-b_j-s) prod_{j>n} Gamma(a_j+s)].
struct MeijerGParams {
  int m = 0, n = 0, p = 0, q = 0;
  std::vector<double> upper;  // a_1..a_p
  std::vector<double> lower;  // b_1..b_q
  double z = 1.0;

  // Checks m <= q, n <= p, list sizes, z > 0 and contour separability
  // (no pole of Gamma(b_j+s), j <= m coincides with one of Gamma(1-a_k-s),
  // k <= n). Throws DomainError.
  void validate() const;

  MellinIntegrand integrand(double log_prefactor = 0.0) const;
};

// Sum of residues over the left poles s = -b_j - k, j <= m, k = 0, 1, ...
// Terms are accumulated in extended precision: the G value can be orders of
// magnitude below the largest partial sums for z near the top of the useful
// range, and double accumulation alone would not reach 1e-9 agreement with
// the contour route there.
// Restricted to the n <= 1, p <= 1 shapes. Throws CoincidentPoleError when
// two of b_1..b_m differ by an integer (within 1e-9); callers fall back to
// contour_eval. Throws DivergenceError if terms grow without settling.
EvalResult residue_series_eval(const MeijerGParams& g, int max_terms = 500,
                               double rel_tol = 1e-13, double log_prefactor = 0.0);

// The exact Mellin-Barnes representation of the family integral: weight,
// base and prefactor of the H-function forms. Generic-cutoff I2 has no such
// closed form (UnsupportedVariantError); b must be positive.
MellinIntegrand integral_to_mellin(const IntegralSpec& spec);

}  // namespace ratekit
