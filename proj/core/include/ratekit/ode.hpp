#pragma once

#include <functional>
#include <vector>

#include "ratekit/representations.hpp"

namespace ratekit {

// The G-function annihilator in the Euler operator eta = z d/dz:
//   L = sign * z * prod_j (eta - upper_shifts[j]) - prod_j (eta - lower_shifts[j])
// with sign = (-1)^{p - m - n} and upper_shifts[j] = a_j - 1.
struct GOperator {
  int sign = 1;
  std::vector<double> upper_shifts;
  std::vector<double> lower_shifts;
  int m_order = 0;  // q, the order of the eta product
};

// Operator straight from the theorem statements (lower shifts 0, 1/m, ...,
// (m-1)/m, alpha/delta; pathway variants add one z-side factor).
// Throws NonIntegerRatioError / UnsupportedVariantError like reduce().
GOperator operator_from_theorem(const IntegralSpec& spec);

// The generic operator read off a Meijer-G parameter set.
GOperator operator_from_reduced(const MeijerGParams& g);

bool operator==(const GOperator& x, const GOperator& y);

struct OdeProbe {
  std::vector<double> z_points;
  double fd_step = 0.05;   // step in t = log z
  int stencil_points = 5;  // odd; supports derivatives up to stencil_points - 1
};

// Central finite-difference weights at the middle of a (2w+1)-point stencil
// with spacing h for derivative orders 0..max_order (Fornberg recursion).
// weights[k][i] multiplies f(t0 + (i-w) h) for the k-th derivative.
std::vector<std::vector<double>> fd_weights(int points, int max_order, double h);

// Applies the operator to f (a function of z > 0) at each z point using
// derivatives in t = log z and returns |L f| / (|z-term| + |eta-term|), the
// cancellation-aware relative residual. A zero function yields exactly 0.
std::vector<double> fd_residual_fn(const GOperator& op,
                                   const std::function<double(double)>& f,
                                   const OdeProbe& probe);

// Same, with f(z) the theorem-scaled integral: the family integral evaluated
// by quadrature at b = (m^m z / kappa)^{1/m}, divided by the reduction
// prefactor. Expected to vanish to finite-difference accuracy.
std::vector<double> fd_residual(const GOperator& op, const IntegralSpec& spec,
                                const OdeProbe& probe, double quad_rel_tol = 1e-12);

// Step-refinement study at one z point: residuals at fd_step / 2^i,
// i = 0..halvings, plus the least-squares slope of log(residual) against
// log(h). Throws StepTooSmallError when halving stops improving well above
// the roundoff floor.
struct FdStudy {
  std::vector<double> steps;
  std::vector<double> residuals;
  double slope = 0.0;
};
FdStudy fd_refinement_study(const GOperator& op, const IntegralSpec& spec, double z,
                            double fd_step, int stencil_points, int halvings,
                            double quad_rel_tol = 1e-12);

// Same study against an arbitrary f(z); noise_floor names the accuracy of f,
// below which non-improvement is expected rather than an error.
FdStudy fd_refinement_study_fn(const GOperator& op,
                               const std::function<double(double)>& f, double z,
                               double fd_step, int stencil_points, int halvings,
                               double noise_floor);

// Expected refinement slope for a symmetric `points`-stencil applied to an
// operator of order q: the leading error of the q-th derivative.
double expected_fd_slope(int points, int q);

// Exact Mellin-side statement of L G = 0: the shifted-integrand identity
//   sign * phi(s+1) * prod_j (-a_j - s) = phi(s) * prod_j (-b_j - s)
// must hold pointwise by the Gamma functional equation. Returns the largest
// normalized residual over the samples. Samples must avoid the (real) poles
// of phi(s) and phi(s+1).
double mellin_operator_identity(const GOperator& op, const MeijerGParams& g,
                                const std::vector<Complex>& s_samples);

}  // namespace ratekit
