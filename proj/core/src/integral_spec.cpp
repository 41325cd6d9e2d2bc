#include "ratekit/integral_spec.hpp"

#include <cmath>

namespace ratekit {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::I1: return "i1";
    case Variant::I2: return "i2";
    case Variant::I1Beta: return "i1beta";
    case Variant::I2Beta: return "i2beta";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "i1") return Variant::I1;
  if (name == "i2") return Variant::I2;
  if (name == "i1beta") return Variant::I1Beta;
  if (name == "i2beta") return Variant::I2Beta;
  throw DomainError("unknown variant '" + name + "'");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Quadrature: return "quadrature";
    case Method::MellinBarnes: return "mellin-barnes";
    case Method::ResidueSeries: return "residue-series";
  }
  return "?";
}

void IntegralSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("spec: alpha must be positive");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("spec: a must be positive");
  if (!(b >= 0.0) || !std::isfinite(b))
    throw DomainError("spec: b must be nonnegative (b = 0 only as a degenerate anchor)");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw DomainError("spec: delta must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("spec: rho must be positive");

  switch (variant) {
    case Variant::I1:
      break;
    case Variant::I2:
      if (!cutoff.has_value() || !(*cutoff > 0.0) || !std::isfinite(*cutoff))
        throw DomainError("spec: I2 requires a finite positive cutoff");
      break;
    case Variant::I1Beta:
      if (!(beta > 1.0)) throw DomainError("spec: I1Beta requires beta > 1");
      if (!(alpha < delta / (beta - 1.0)))
        throw DomainError("spec: I1Beta tail diverges unless alpha < delta/(beta-1)");
      if (cutoff.has_value()) throw DomainError("spec: cutoff applies to I2 only");
      break;
    case Variant::I2Beta:
      if (!(beta < 1.0)) throw DomainError("spec: I2Beta requires beta < 1");
      if (cutoff.has_value())
        throw DomainError("spec: I2Beta support edge is derived from (a, beta, delta)");
      break;
  }
}

double IntegralSpec::upper_limit() const {
  switch (variant) {
    case Variant::I1:
    case Variant::I1Beta:
      return std::numeric_limits<double>::infinity();
    case Variant::I2:
      return *cutoff;
    case Variant::I2Beta:
      return std::pow(1.0 / (a * (1.0 - beta)), 1.0 / delta);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace ratekit
