#pragma once

#include <functional>

namespace ratekit {

struct QuadOutcome {
  double value = 0.0;
  double abs_error = 0.0;
  long evals = 0;
  bool converged = true;
};

// Adaptive Gauss7/Kronrod15 on a finite interval. Splits the worst segment
// until sum of segment errors <= max(abs_tol, rel_tol * |value|) or the
// segment budget runs out (converged=false in that case, no throw).
QuadOutcome adaptive_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_segments = 4000);

}  // namespace ratekit
