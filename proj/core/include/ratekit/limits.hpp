#pragma once

#include <vector>

#include "ratekit/gamma.hpp"
#include "ratekit/integral_spec.hpp"

namespace ratekit {

// One beta -> 1 convergence experiment: the pathway integral against the
// classical unbounded integral I1 (the bounded family's support edge runs to
// infinity in the limit, so I1 is the common target for both directions).
struct LimitStudy {
  IntegralSpec base_spec;  // the I1 target parameters
  std::vector<double> beta_sequence;
  std::vector<double> gaps;  // |I_beta - I1| per beta
  double fitted_order = 0.0;
};

// |quad(pathway family at beta) - quad(I1 with the same alpha, a, b, delta,
// rho)|. spec.variant selects I1Beta or I2Beta; beta = 1 is rejected.
double pathway_gap(const IntegralSpec& spec, double beta, double rel_tol = 1e-10);

// beta = 1 + 2^{-k} (heavy-tail side) or 1 - 2^{-k}, k = k_lo..k_hi.
std::vector<double> default_beta_sequence(bool from_above, int k_lo = 4, int k_hi = 16);

// Runs pathway_gap along the sequence and fits the empirical convergence
// order: the slope of log(gap) against log|1 - beta|.
LimitStudy run_limit_study(const IntegralSpec& spec, int k_lo, int k_hi,
                           double rel_tol = 1e-10);

// The gamma-ratio limit mechanism: for x = alpha_over_delta + s and
// u = 1/(1-beta),
//   ratio(beta) = Gamma(1 + u) u^x / Gamma(1 + x + u)  ->  1  as beta -> 1-.
// Returns |ratio - 1| for each beta; the deviation is O(1 - beta).
std::vector<double> gamma_ratio_limit_check(double alpha_over_delta, Complex s,
                                            const std::vector<double>& beta_sequence);

// Least-squares slope of log(y) against log(x); helper for convergence-order
// fits in studies and tests.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ratekit
