#include "ratekit/representations.hpp"

#include <cmath>
#include <string>

#include "ratekit/integrand.hpp"

namespace ratekit {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

int snapped_ratio(double delta, double rho) {
  const double ratio = delta / rho;
  const double m = std::round(ratio);
  if (!(m >= 1.0) || std::abs(ratio - m) > 1e-12 * std::max(1.0, m)) {
    throw NonIntegerRatioError("delta/rho = " + std::to_string(ratio) +
                               " is not a positive integer");
  }
  return static_cast<int>(m);
}
}  // namespace

ReducedForm reduce(const IntegralSpec& spec) {
  spec.validate();
  if (spec.variant == Variant::I2) {
    throw UnsupportedVariantError("reduce: generic-cutoff I2 has no G representation");
  }
  if (!(spec.b > 0.0)) throw DomainError("reduce: b must be positive");
  const int m = snapped_ratio(spec.delta, spec.rho);
  const double ad = spec.alpha / spec.delta;  // = alpha/(m rho)

  ReducedForm rf;
  rf.m = m;
  rf.g.q = m + 1;
  rf.g.m = m + 1;
  rf.g.lower.reserve(m + 1);
  for (int j = 0; j < m; ++j) rf.g.lower.push_back(static_cast<double>(j) / m);
  rf.g.lower.push_back(ad);

  const double mm = std::pow(static_cast<double>(m), static_cast<double>(m));
  const double common = 0.5 * (1.0 - m) * kLog2Pi - std::log(spec.rho) -
                        0.5 * std::log(static_cast<double>(m));

  switch (spec.variant) {
    case Variant::I1:
      rf.z = spec.a * std::pow(spec.b, m) / mm;
      rf.log_prefactor = common - ad * std::log(spec.a);
      break;
    case Variant::I1Beta: {
      const double kappa = spec.a * (spec.beta - 1.0);
      rf.z = kappa * std::pow(spec.b, m) / mm;
      rf.g.p = 1;
      rf.g.n = 1;
      rf.g.upper.push_back((spec.beta - 2.0) / (spec.beta - 1.0) + ad);
      rf.log_prefactor =
          common - ad * std::log(kappa) -
          log_gamma(Complex(1.0 / (spec.beta - 1.0), 0.0)).real();
      break;
    }
    case Variant::I2Beta: {
      const double kappa = spec.a * (1.0 - spec.beta);
      rf.z = kappa * std::pow(spec.b, m) / mm;
      rf.g.p = 1;
      rf.g.n = 0;
      rf.g.upper.push_back((2.0 - spec.beta) / (1.0 - spec.beta) + ad);
      rf.log_prefactor =
          common - ad * std::log(kappa) +
          log_gamma(Complex((2.0 - spec.beta) / (1.0 - spec.beta), 0.0)).real();
      break;
    }
    default:
      break;
  }
  rf.g.z = rf.z;
  rf.g.validate();
  return rf;
}

const char* eval_method_name(EvalMethod m) {
  switch (m) {
    case EvalMethod::Auto: return "auto";
    case EvalMethod::Quadrature: return "quadrature";
    case EvalMethod::Contour: return "contour";
    case EvalMethod::Series: return "series";
  }
  return "?";
}

EvalMethod eval_method_from_name(const std::string& name) {
  if (name == "auto") return EvalMethod::Auto;
  if (name == "quadrature") return EvalMethod::Quadrature;
  if (name == "contour") return EvalMethod::Contour;
  if (name == "series") return EvalMethod::Series;
  throw DomainError("unknown method '" + name + "'");
}

namespace {

EvalResult eval_contour(const IntegralSpec& spec, double tol) {
  const MellinIntegrand mi = integral_to_mellin(spec);
  return contour_eval(mi, plan_contour(mi, std::min(tol, 1e-11)));
}

// residue series over the reduced G form; coincident poles take the
// documented fallback, the same G integrand on a contour
EvalResult eval_series(const IntegralSpec& spec, double tol) {
  const ReducedForm rf = reduce(spec);
  try {
    return residue_series_eval(rf.g, 500, 1e-13, rf.log_prefactor);
  } catch (const CoincidentPoleError&) {
    const MellinIntegrand mi = rf.g.integrand(rf.log_prefactor);
    return contour_eval(mi, plan_contour(mi, std::min(tol, 1e-11)));
  }
}

// series when the reduction exists, H-form contour otherwise
EvalResult eval_mellin_side(const IntegralSpec& spec, double tol) {
  try {
    return eval_series(spec, tol);
  } catch (const NonIntegerRatioError&) {
    return eval_contour(spec, tol);
  }
}

}  // namespace

EvalResult eval(const IntegralSpec& spec, EvalMethod method, double rel_tol) {
  spec.validate();
  switch (method) {
    case EvalMethod::Quadrature:
      return quad_eval(spec, rel_tol);
    case EvalMethod::Contour:
      return eval_contour(spec, rel_tol);
    case EvalMethod::Series:
      return eval_series(spec, rel_tol);
    case EvalMethod::Auto:
      break;
  }

  const EvalResult quad = quad_eval(spec, rel_tol);
  if (spec.variant == Variant::I2 || spec.b == 0.0) {
    // no Mellin-side route: quadrature result stands alone
    return quad;
  }
  const EvalResult mellin = eval_mellin_side(spec, rel_tol);

  const double combined = quad.abs_error_estimate + mellin.abs_error_estimate +
                          1e-12 * (std::abs(quad.value) + std::abs(mellin.value));
  if (std::abs(quad.value - mellin.value) > 10.0 * combined) {
    throw MethodDisagreement(
        "eval: quadrature " + std::to_string(quad.value) + " vs " +
            method_name(mellin.method) + " " + std::to_string(mellin.value) +
            " beyond 10x combined estimate " + std::to_string(combined),
        quad.value, mellin.value);
  }
  EvalResult out = mellin;
  out.work += quad.work;
  return out;
}

Complex mellin_moment(const IntegralSpec& spec, Complex s) {
  spec.validate();
  if (spec.variant == Variant::I2) {
    throw UnsupportedVariantError("mellin_moment: no closed form for generic-cutoff I2");
  }
  if (!(s.real() > 0.0) || !(spec.alpha + s.real() > 0.0)) {
    throw StripViolationError("mellin_moment: need Re(s) > 0 and Re(alpha + s) > 0");
  }
  if (spec.variant == Variant::I1Beta &&
      !(spec.alpha + s.real() < spec.delta / (spec.beta - 1.0))) {
    throw StripViolationError(
        "mellin_moment: I1Beta strip requires Re(alpha + s) < delta/(beta-1)");
  }

  IntegralSpec unit_b = spec;
  unit_b.b = 1.0;
  const MellinIntegrand mi = integral_to_mellin(unit_b);
  return std::exp(mi.log_phi(s) + mi.log_prefactor - s * std::log(mi.base));
}

}  // namespace ratekit
