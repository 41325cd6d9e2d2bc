#include "ratekit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratekit/integrand.hpp"

namespace ratekit {

namespace {

int parity_sign(int e) { return ((e % 2) + 2) % 2 == 0 ? 1 : -1; }

// polynomial coefficients of prod_k (D - r_k), ascending in D
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

GOperator operator_from_theorem(const IntegralSpec& spec) {
  // the operator is a formal object: unlike evaluation, it exists on the
  // boundary of the tail-integrability region, so only the structural
  // parameter restrictions apply here
  if (!(spec.alpha > 0.0) || !(spec.delta > 0.0) || !(spec.rho > 0.0)) {
    throw DomainError("operator_from_theorem: alpha, delta, rho must be positive");
  }
  if (spec.variant == Variant::I1Beta && !(spec.beta > 1.0)) {
    throw DomainError("operator_from_theorem: I1Beta requires beta > 1");
  }
  if (spec.variant == Variant::I2Beta && !(spec.beta < 1.0)) {
    throw DomainError("operator_from_theorem: I2Beta requires beta < 1");
  }
  if (spec.variant == Variant::I2) {
    throw UnsupportedVariantError("operator_from_theorem: no theorem covers generic I2");
  }
  const double ratio = spec.delta / spec.rho;
  const double mr = std::round(ratio);
  if (!(mr >= 1.0) || std::abs(ratio - mr) > 1e-12 * std::max(1.0, mr)) {
    throw NonIntegerRatioError("operator_from_theorem: delta/rho must be integral");
  }
  const int m = static_cast<int>(mr);
  const double ad = spec.alpha / spec.delta;

  GOperator op;
  op.m_order = m + 1;
  op.lower_shifts.reserve(m + 1);
  for (int j = 0; j < m; ++j) op.lower_shifts.push_back(static_cast<double>(j) / m);
  op.lower_shifts.push_back(ad);

  switch (spec.variant) {
    case Variant::I1:
      op.sign = parity_sign(m + 1);
      break;
    case Variant::I1Beta:
      op.sign = parity_sign(m + 1);
      op.upper_shifts.push_back(((spec.beta - 2.0) / (spec.beta - 1.0) + ad) - 1.0);
      break;
    case Variant::I2Beta:
      op.sign = parity_sign(m);
      op.upper_shifts.push_back(((2.0 - spec.beta) / (1.0 - spec.beta) + ad) - 1.0);
      break;
    default:
      break;
  }
  return op;
}

GOperator operator_from_reduced(const MeijerGParams& g) {
  g.validate();
  GOperator op;
  op.sign = parity_sign(g.p - g.m - g.n);
  op.m_order = g.q;
  for (double a : g.upper) op.upper_shifts.push_back(a - 1.0);
  op.lower_shifts = g.lower;
  return op;
}

bool operator==(const GOperator& x, const GOperator& y) {
  return x.sign == y.sign && x.m_order == y.m_order &&
         x.upper_shifts == y.upper_shifts && x.lower_shifts == y.lower_shifts;
}

std::vector<std::vector<double>> fd_weights(int points, int max_order, double h) {
  if (points < 1 || points % 2 == 0)
    throw DomainError("fd_weights: stencil size must be odd and positive");
  if (max_order >= points)
    throw DomainError("fd_weights: derivative order exceeds stencil support");

  // Fornberg recursion for weights at x0 = 0 with nodes (i - w) h
  const int n = points - 1;
  const int w = n / 2;
  std::vector<double> x(points);
  for (int i = 0; i <= n; ++i) x[i] = (i - w) * h;

  std::vector<std::vector<std::vector<double>>> d(
      points, std::vector<std::vector<double>>(points, std::vector<double>(max_order + 1, 0.0)));
  d[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      for (int k = std::min(i, max_order); k >= 0; --k) {
        const double dk1 = k > 0 ? d[i - 1][j][k - 1] : 0.0;
        d[i][j][k] = (x[i] * d[i - 1][j][k] - k * dk1) / c3;
      }
    }
    for (int k = std::min(i, max_order); k >= 0; --k) {
      const double dk1 = k > 0 ? d[i - 1][i - 1][k - 1] : 0.0;
      d[i][i][k] = (c1 / c2) * (k * dk1 - x[i - 1] * d[i - 1][i - 1][k]);
    }
    c1 = c2;
  }

  std::vector<std::vector<double>> weights(max_order + 1, std::vector<double>(points, 0.0));
  for (int k = 0; k <= max_order; ++k) {
    for (int i = 0; i <= n; ++i) weights[k][i] = d[n][i][k];
  }
  return weights;
}

std::vector<double> fd_residual_fn(const GOperator& op,
                                   const std::function<double(double)>& f,
                                   const OdeProbe& probe) {
  const int q = op.m_order;
  const int pts = probe.stencil_points;
  if (pts <= q) throw DomainError("fd_residual: stencil too small for operator order");
  const int max_order = std::max(q, static_cast<int>(op.upper_shifts.size()));
  const auto weights = fd_weights(pts, max_order, probe.fd_step);
  const auto lower_poly = poly_from_roots(op.lower_shifts);
  const auto upper_poly = poly_from_roots(op.upper_shifts);
  const int w = (pts - 1) / 2;

  std::vector<double> out;
  out.reserve(probe.z_points.size());
  for (double z : probe.z_points) {
    const double t0 = std::log(z);
    std::vector<double> fv(pts);
    for (int i = 0; i < pts; ++i) fv[i] = f(std::exp(t0 + (i - w) * probe.fd_step));

    std::vector<double> deriv(max_order + 1, 0.0);
    for (int k = 0; k <= max_order; ++k) {
      double acc = 0.0;
      for (int i = 0; i < pts; ++i) acc += weights[k][i] * fv[i];
      deriv[k] = acc;
    }

    double eta_term = 0.0;
    for (std::size_t k = 0; k < lower_poly.size(); ++k) eta_term += lower_poly[k] * deriv[k];
    double z_term = 0.0;
    for (std::size_t k = 0; k < upper_poly.size(); ++k) z_term += upper_poly[k] * deriv[k];
    z_term *= op.sign * z;

    const double scale = std::abs(z_term) + std::abs(eta_term);
    out.push_back(scale == 0.0 ? 0.0 : std::abs(z_term - eta_term) / scale);
  }
  return out;
}

namespace {

// f(z) = I(b(z)) / prefactor with b recovered from the reduced argument.
std::function<double(double)> theorem_scaled_integral(const IntegralSpec& spec,
                                                      double quad_rel_tol) {
  const ReducedForm rf = reduce(spec);
  double kappa = spec.a;
  if (spec.variant == Variant::I1Beta) kappa = spec.a * (spec.beta - 1.0);
  if (spec.variant == Variant::I2Beta) kappa = spec.a * (1.0 - spec.beta);
  const double mm = std::pow(static_cast<double>(rf.m), static_cast<double>(rf.m));
  const double log_pref = rf.log_prefactor;
  const int m = rf.m;
  return [spec, kappa, mm, m, log_pref, quad_rel_tol](double z) {
    IntegralSpec s = spec;
    s.b = std::pow(mm * z / kappa, 1.0 / m);
    return quad_eval(s, quad_rel_tol).value * std::exp(-log_pref);
  };
}

}  // namespace

std::vector<double> fd_residual(const GOperator& op, const IntegralSpec& spec,
                                const OdeProbe& probe, double quad_rel_tol) {
  return fd_residual_fn(op, theorem_scaled_integral(spec, quad_rel_tol), probe);
}

FdStudy fd_refinement_study(const GOperator& op, const IntegralSpec& spec, double z,
                            double fd_step, int stencil_points, int halvings,
                            double quad_rel_tol) {
  return fd_refinement_study_fn(op, theorem_scaled_integral(spec, quad_rel_tol), z,
                                fd_step, stencil_points, halvings, quad_rel_tol);
}

FdStudy fd_refinement_study_fn(const GOperator& op,
                               const std::function<double(double)>& f, double z,
                               double fd_step, int stencil_points, int halvings,
                               double noise_floor) {
  FdStudy study;
  OdeProbe probe{{z}, fd_step, stencil_points};
  for (int i = 0; i <= halvings; ++i) {
    probe.fd_step = fd_step / std::pow(2.0, i);
    study.steps.push_back(probe.fd_step);
    study.residuals.push_back(fd_residual_fn(op, f, probe)[0]);
  }

  // improvement check: refinement must help while far from the noise floor
  for (std::size_t i = 1; i < study.residuals.size(); ++i) {
    if (study.residuals[i] > 0.7 * study.residuals[i - 1] &&
        study.residuals[i - 1] > 1e3 * noise_floor) {
      throw StepTooSmallError(
          "fd_refinement_study: halving the step stopped improving at h = " +
          std::to_string(study.steps[i]));
    }
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(study.steps.size());
  for (std::size_t i = 0; i < study.steps.size(); ++i) {
    const double x = std::log(study.steps[i]);
    const double y = std::log(std::max(study.residuals[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  study.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return study;
}

double expected_fd_slope(int points, int q) {
  // leading error order of the q-th derivative on a symmetric stencil
  return 2.0 * std::floor((points - q + 1) / 2.0);
}

double mellin_operator_identity(const GOperator& op, const MeijerGParams& g,
                                const std::vector<Complex>& s_samples) {
  const MellinIntegrand phi = g.integrand();
  double worst = 0.0;
  for (const Complex& s : s_samples) {
    const Complex ratio = std::exp(phi.log_phi(s + 1.0) - phi.log_phi(s));
    Complex lhs = static_cast<double>(op.sign) * ratio;
    for (double u : op.upper_shifts) lhs *= -(u + 1.0) - s;
    Complex rhs = 1.0;
    double norm = 1.0;
    for (double b : op.lower_shifts) {
      rhs *= -b - s;
      norm *= std::abs(-b - s);
    }
    if (norm == 0.0) throw PoleError("mellin_operator_identity: sample at a root");
    worst = std::max(worst, std::abs(lhs - rhs) / norm);
  }
  return worst;
}

}  // namespace ratekit
