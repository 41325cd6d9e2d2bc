#include "ratekit/limits.hpp"

#include <cmath>

#include "ratekit/integrand.hpp"

namespace ratekit {

double pathway_gap(const IntegralSpec& spec, double beta, double rel_tol) {
  if (spec.variant != Variant::I1Beta && spec.variant != Variant::I2Beta) {
    throw DomainError("pathway_gap: spec must be a pathway variant");
  }
  if (beta == 1.0) {
    throw DomainError("pathway_gap: the pathway kernel is undefined at beta = 1; "
                      "evaluate the classical spec directly");
  }
  IntegralSpec pathway = spec;
  pathway.beta = beta;
  pathway.validate();

  IntegralSpec classical = spec;
  classical.variant = Variant::I1;
  classical.beta = std::numeric_limits<double>::quiet_NaN();

  const double v_path = quad_eval(pathway, rel_tol).value;
  const double v_classical = quad_eval(classical, rel_tol).value;
  return std::abs(v_path - v_classical);
}

std::vector<double> default_beta_sequence(bool from_above, int k_lo, int k_hi) {
  std::vector<double> seq;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double eps = std::pow(2.0, -k);
    seq.push_back(from_above ? 1.0 + eps : 1.0 - eps);
  }
  return seq;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LimitStudy run_limit_study(const IntegralSpec& spec, int k_lo, int k_hi,
                           double rel_tol) {
  LimitStudy study;
  study.base_spec = spec;
  study.base_spec.variant = Variant::I1;
  study.base_spec.beta = std::numeric_limits<double>::quiet_NaN();
  study.beta_sequence =
      default_beta_sequence(spec.variant == Variant::I1Beta, k_lo, k_hi);

  std::vector<double> eps;
  for (double beta : study.beta_sequence) {
    study.gaps.push_back(pathway_gap(spec, beta, rel_tol));
    eps.push_back(std::abs(1.0 - beta));
  }
  study.fitted_order = log_log_slope(eps, study.gaps);
  return study;
}

std::vector<double> gamma_ratio_limit_check(double alpha_over_delta, Complex s,
                                            const std::vector<double>& beta_sequence) {
  const Complex x = alpha_over_delta + s;
  std::vector<double> deviations;
  deviations.reserve(beta_sequence.size());
  for (double beta : beta_sequence) {
    if (!(beta < 1.0))
      throw DomainError("gamma_ratio_limit_check: sequence must stay below 1");
    const double u = 1.0 / (1.0 - beta);
    const Complex ratio = asymptotic_gamma_ratio(u, Complex(1.0, 0.0), 1.0 + x);
    deviations.push_back(std::abs(ratio - 1.0));
  }
  return deviations;
}

}  // namespace ratekit
