#include "ratekit/gamma.hpp"

#include <cmath>

namespace ratekit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogPi = 1.1447298858494001741;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// B_{2n} / (2n (2n-1)) for the Stirling correction series.
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
};

// Stirling push radius; the series above is ~1e-21 accurate beyond it.
constexpr double kStirlingRadius = 10.0;

// log Gamma for Re(z) >= 0.5 via recurrence push plus the Stirling series.
Complex log_gamma_right(Complex z) {
  Complex shift = 0.0;
  while (std::abs(z) < kStirlingRadius) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex lz = std::log(z);
  Complex series = 0.0;
  const Complex w = 1.0 / (z * z);
  Complex zp = 1.0 / z;
  for (double coeff : kStirling) {
    series += coeff * zp;
    zp *= w;
  }
  return (z - 0.5) * lz - z + kHalfLog2Pi + series - shift;
}

// log sin(pi z) without overflow for large |Im z|; branch is only stable
// modulo 2 pi i, which is all the callers rely on.
Complex log_sin_pi(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi(w + n)) = (-1)^n sin(pi w); centering on the nearest integer keeps
  // sin(pi w) well conditioned near the zeros
  const double n = std::round(z.real());
  const Complex w = z - n;
  const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
  const Complex branch = odd ? Complex(0.0, kPi) : Complex(0.0, 0.0);
  if (w.imag() < 1.0) {
    return branch + std::log(std::sin(kPi * w));
  }
  // sin(pi w) = exp(-i pi w) (exp(2 i pi w) - 1) / (2i) with |exp(2 i pi w)| < 1
  const Complex i(0.0, 1.0);
  const Complex small = std::exp(2.0 * i * kPi * w);
  return branch - i * kPi * w + std::log(small - 1.0) - std::log(2.0 * i);
}

void check_pole(Complex z) {
  if (z.real() > 0.5) return;
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && std::abs(z - nearest) < kGammaPoleTolerance) {
    throw PoleError("log_gamma: argument within tolerance of pole at " +
                    std::to_string(static_cast<long long>(nearest)));
  }
}

}  // namespace

Complex log_gamma(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) {
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return kLogPi - log_sin_pi(z) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

SignedLogGamma log_gamma_signed(long double x) {
  if (x > 0.0L) {
    return {std::lgamma(x), 1};
  }
  const long double fl = std::floor(x);
  if (x == fl) {
    throw PoleError("log_gamma_signed: pole at nonpositive integer");
  }
  const int sign = (static_cast<long long>(fl) % 2 == 0) ? 1 : -1;
  return {std::lgamma(x), sign};
}

double gauss_multiplication_residual(Complex z, int m) {
  if (m < 1) throw DomainError("gauss_multiplication_residual: m must be >= 1");
  Complex rhs = 0.5 * (1.0 - m) * std::log(2.0 * kPi) +
                (static_cast<double>(m) * z - 0.5) * std::log(static_cast<double>(m));
  for (int k = 0; k < m; ++k) {
    rhs += log_gamma(z + static_cast<double>(k) / m);
  }
  const Complex diff = log_gamma(static_cast<double>(m) * z) - rhs;
  // identities hold modulo 2 pi i on the imaginary part
  const double im = std::remainder(diff.imag(), 2.0 * kPi);
  return std::hypot(diff.real(), im);
}

Complex asymptotic_gamma_ratio(double x, Complex a1, Complex a2) {
  if (!(x > 0.0)) throw DomainError("asymptotic_gamma_ratio: x must be positive");
  if (a1 == a2) return 1.0;
  const Complex log_ratio =
      log_gamma(x + a1) - log_gamma(x + a2) + (a2 - a1) * std::log(x);
  return std::exp(log_ratio);
}

}  // namespace ratekit
