#pragma once

#include <cmath>
#include <complex>

#include "ratekit/rng.hpp"

namespace ratekit_test {

// relative-or-absolute closeness for values that may legitimately be near 0
inline bool close(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

inline bool rel_close(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

// complex draw avoiding the integer lattice on the real axis
inline std::complex<double> offpole(ratekit::Rng& rng, double re_lo, double re_hi,
                                    double im_max, double guard = 0.05) {
  for (;;) {
    const std::complex<double> z(rng.uniform(re_lo, re_hi),
                                 rng.uniform(-im_max, im_max));
    if (std::abs(z.imag()) >= guard) return z;
    if (std::abs(z.real() - std::round(z.real())) >= guard) return z;
  }
}

}  // namespace ratekit_test
