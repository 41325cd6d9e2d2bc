#include "ratekit/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratekit/quadrature.hpp"

namespace ratekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log of the decay kernel K(x): exp(-a x^delta) for the classical families,
// the pathway power forms otherwise. Written with log1p so the beta -> 1
// regime stays accurate when 1/(beta-1) is huge.
double log_kernel(const IntegralSpec& s, double x_pow_delta) {
  switch (s.variant) {
    case Variant::I1:
    case Variant::I2:
      return -s.a * x_pow_delta;
    case Variant::I1Beta:
      return -std::log1p(s.a * (s.beta - 1.0) * x_pow_delta) / (s.beta - 1.0);
    case Variant::I2Beta: {
      const double u = s.a * (1.0 - s.beta) * x_pow_delta;
      if (u >= 1.0) return -kInf;
      return std::log1p(-u) / (1.0 - s.beta);
    }
  }
  return -kInf;
}

// x * d/dx log K(x); used for peak bracketing in log x.
double kernel_log_slope(const IntegralSpec& s, double x_pow_delta) {
  switch (s.variant) {
    case Variant::I1:
    case Variant::I2:
      return -s.a * s.delta * x_pow_delta;
    case Variant::I1Beta:
      return -s.a * s.delta * x_pow_delta / (1.0 + s.a * (s.beta - 1.0) * x_pow_delta);
    case Variant::I2Beta: {
      const double u = s.a * (1.0 - s.beta) * x_pow_delta;
      if (u >= 1.0) return -kInf;
      return -s.a * s.delta * x_pow_delta / (1.0 - u);
    }
  }
  return -kInf;
}

// d log(integrand) / d log(x)
double log_slope(const IntegralSpec& s, double u) {
  const double x = std::exp(u);
  return (s.alpha - 1.0) + s.b * s.rho * std::exp(-s.rho * u) +
         kernel_log_slope(s, std::pow(x, s.delta));
}

struct Accum {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
  bool ok = true;

  void add(const QuadOutcome& q) {
    value += q.value;
    error += q.abs_error;
    evals += q.evals;
    ok = ok && q.converged;
  }
};

// Integrate f over [start, inf) on geometrically growing chunks, stopping
// once the extrapolated tail is below the absolute budget (or, when only a
// relative target is given, below it against the running total).
void chunked_tail(Accum& acc, const std::function<double(double)>& f, double start,
                  double abs_tol, double rel_tol) {
  double lo = start;
  double prev_chunk = kInf;
  for (int k = 0; k < 64; ++k) {
    const double hi = lo * 2.0;
    const QuadOutcome q = adaptive_gk(f, lo, hi, abs_tol / 16.0, rel_tol, 800);
    acc.add(q);
    const double chunk = std::abs(q.value);
    if (k >= 1) {
      double ratio = prev_chunk > 0.0 ? chunk / prev_chunk : 0.0;
      ratio = std::min(ratio, 0.9);
      const double tail = chunk * ratio / (1.0 - ratio);
      if (tail < 0.5 * std::max(abs_tol, rel_tol * std::abs(acc.value))) {
        acc.error += tail;
        return;
      }
    }
    prev_chunk = chunk;
    lo = hi;
  }
  acc.ok = false;
}

// One full pass over the segment decomposition at the given tolerances.
Accum integrate_all(const IntegralSpec& s, double rel_tol, double abs_tol) {
  Accum acc;
  const double upper = s.upper_limit();
  const double split = integrand_peak(s);
  const double e_delta = s.delta;

  // ---- left part (0, split] -------------------------------------------
  if (s.b > 0.0) {
    // t = x^{-rho}: (1/rho) int_{t0}^inf t^{-alpha/rho - 1} K(x(t)) e^{-b t} dt
    const double t0 = std::pow(split, -s.rho);
    const double pw = -s.alpha / s.rho - 1.0;
    auto f = [&](double t) {
      const double logx = -std::log(t) / s.rho;
      const double xps = std::exp(e_delta * logx);
      return std::exp(pw * std::log(t) + log_kernel(s, xps) - s.b * t) / s.rho;
    };
    chunked_tail(acc, f, t0, abs_tol, rel_tol);
  } else {
    // degenerate b = 0: kill both subalgebraic endpoints with v = x^c
    const double c = std::min(s.alpha, s.delta);
    const double v0 = std::pow(split, c);
    auto f = [&](double v) {
      const double logx = std::log(v) / c;
      const double xps = std::exp(e_delta * logx);
      return std::exp((s.alpha / c - 1.0) * std::log(v) + log_kernel(s, xps)) / c;
    };
    acc.add(adaptive_gk(f, 0.0, v0, abs_tol / 8.0, rel_tol, 800));
  }

  // ---- right part [split, upper) --------------------------------------
  switch (s.variant) {
    case Variant::I1: {
      // u = x^delta: (1/delta) int u^{alpha/delta - 1} e^{-a u} e^{-b u^{-rho/delta}} du
      const double u0 = std::pow(split, s.delta);
      auto f = [&](double u) {
        const double logu = std::log(u);
        return std::exp((s.alpha / s.delta - 1.0) * logu - s.a * u -
                        s.b * std::exp(-(s.rho / s.delta) * logu)) /
               s.delta;
      };
      chunked_tail(acc, f, u0, abs_tol, rel_tol);
      break;
    }
    case Variant::I1Beta: {
      const double kappa = s.a * (s.beta - 1.0);
      // chunked middle from the peak toward the kernel's power-law regime;
      // for beta near 1 that regime can sit many decades out, so fixed-width
      // spans would starve the adaptive rule of nodes near the mass
      const double x_t =
          std::max(2.0 * split, std::pow(10.0 / kappa, 1.0 / s.delta));
      auto fx = [&](double x) { return integrand(s, x); };
      double lo = split;
      for (int k = 0; k < 64 && lo < x_t; ++k) {
        const double hi = std::min(2.0 * lo, x_t);
        const QuadOutcome q = adaptive_gk(fx, lo, hi, abs_tol / 16.0, rel_tol, 800);
        acc.add(q);
        lo = hi;
        if (k >= 2 && std::abs(q.value) <
                          1e-3 * std::max(abs_tol, rel_tol * std::abs(acc.value)))
          break;
      }
      // exact v = 1/x change of variables over [lo, inf), with the algebraic
      // v -> 0 endpoint killed by v = w^g
      const double q = s.delta / (s.beta - 1.0) - s.alpha - 1.0;  // > -1
      const double g = std::max(1.0, 2.0 / (q + 1.0));
      const double w_t = std::pow(1.0 / lo, 1.0 / g);
      const double inv_b1 = -1.0 / (s.beta - 1.0);
      auto fw = [&](double w) {
        const double logw = std::log(w);
        const double lv = g * logw;  // log v
        return std::exp(std::log(g) + (g * (q + 1.0) - 1.0) * logw +
                        inv_b1 * std::log(std::exp(s.delta * lv) + kappa) -
                        s.b * std::exp(s.rho * lv));
      };
      acc.add(adaptive_gk(fw, 0.0, w_t, abs_tol / 8.0, rel_tol, 800));
      break;
    }
    case Variant::I2: {
      auto fx = [&](double x) { return integrand(s, x); };
      acc.add(adaptive_gk(fx, split, upper, abs_tol / 8.0, rel_tol, 800));
      break;
    }
    case Variant::I2Beta: {
      // x = d - (d - split) w^g removes the (d - x)^{1/(1-beta)} edge factor
      const double d = upper;
      const double e = 1.0 / (1.0 - s.beta);
      const double g = std::max(1.0, 2.0 / (e + 1.0));
      const double width = d - split;
      auto fw = [&](double w) {
        const double sdist = width * std::pow(w, g);  // d - x, exact in w
        const double x = d - sdist;
        // 1 - a(1-beta) x^delta = 1 - (x/d)^delta, stable via expm1/log1p
        const double frac = -std::expm1(s.delta * std::log1p(-sdist / d));
        if (frac <= 0.0) return 0.0;
        const double logf = (s.alpha - 1.0) * std::log(x) + e * std::log(frac) -
                            s.b * std::pow(x, -s.rho);
        return g * width * std::pow(w, g - 1.0) * std::exp(logf);
      };
      acc.add(adaptive_gk(fw, 0.0, 1.0, abs_tol / 8.0, rel_tol, 800));
      break;
    }
  }
  return acc;
}

}  // namespace

double log_integrand(const IntegralSpec& spec, double x) {
  if (!(x > 0.0)) throw DomainError("integrand: x must be positive");
  const double upper = spec.upper_limit();
  if (x > upper)
    throw DomainError("integrand: x = " + std::to_string(x) +
                      " beyond the support edge " + std::to_string(upper));
  const double barrier = spec.b > 0.0 ? spec.b * std::pow(x, -spec.rho) : 0.0;
  return (spec.alpha - 1.0) * std::log(x) + log_kernel(spec, std::pow(x, spec.delta)) -
         barrier;
}

double integrand(const IntegralSpec& spec, double x) {
  return std::exp(log_integrand(spec, x));
}

double integrand_peak(const IntegralSpec& spec) {
  const double upper = spec.upper_limit();
  const double u_hi_limit =
      std::isfinite(upper) ? std::log(upper) - 1e-9 : 60.0;

  // scan for a sign change of the log-log slope, then bisect
  double u_prev = -60.0;
  double g_prev = log_slope(spec, u_prev);
  double u_lo = 0.0, u_hi = 0.0;
  bool bracketed = false;
  for (double u = -59.0; u <= u_hi_limit; u += 1.0) {
    const double gu = log_slope(spec, u);
    if (g_prev > 0.0 && gu <= 0.0) {
      u_lo = u - 1.0;
      u_hi = u;
      bracketed = true;
      break;
    }
    u_prev = u;
    g_prev = gu;
  }
  if (!bracketed) {
    // monotone integrand: fall back to the kernel scale a x^delta = 1
    const double scale = std::pow(1.0 / spec.a, 1.0 / spec.delta);
    return std::isfinite(upper) ? std::min(scale, 0.5 * upper) : scale;
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (u_lo + u_hi);
    if (log_slope(spec, mid) > 0.0)
      u_lo = mid;
    else
      u_hi = mid;
  }
  return std::exp(0.5 * (u_lo + u_hi));
}

EvalResult quad_eval(const IntegralSpec& spec, double rel_tol) {
  spec.validate();
  if (!(rel_tol >= 1e-13 && rel_tol <= 1e-2))
    throw DomainError("quad_eval: rel_tol must lie in [1e-13, 1e-2]");

  // scale pass (relative control only), then a final pass against an
  // absolute budget derived from the rough value
  Accum rough = integrate_all(spec, 1e-3, 0.0);
  const double budget = std::max(rel_tol * std::abs(rough.value),
                                 std::numeric_limits<double>::min() * 1e10);
  Accum fine = integrate_all(spec, rel_tol / 4.0, budget / 4.0);
  fine.evals += rough.evals;

  const double target = std::max(budget, rel_tol * std::abs(fine.value));
  if (!fine.ok || fine.error > 10.0 * target) {
    throw ConvergenceError(
        "quad_eval: error estimate " + std::to_string(fine.error) +
        " stagnated above tolerance for value " + std::to_string(fine.value));
  }
  if (!std::isfinite(fine.value) || !std::isfinite(fine.error)) {
    throw ConvergenceError("quad_eval: non-finite result");
  }
  return EvalResult{fine.value, fine.error, Method::Quadrature, fine.evals};
}

double tsallis_derivative_residual(double alpha0, double a, double beta, double x,
                                   double fd_step) {
  if (!(beta < 1.0)) throw DomainError("tsallis residual: beta < 1 required");
  if (!(a > 0.0)) throw DomainError("tsallis residual: a > 0 required");
  const double edge = 1.0 / (a * (1.0 - beta));
  if (!(x > fd_step && x + fd_step < edge))
    throw DomainError("tsallis residual: x +- step must stay inside the support");

  auto g = [&](double t) {
    return std::pow(t, alpha0) *
           std::exp(std::log1p(-a * (1.0 - beta) * t) / (1.0 - beta));
  };
  const double fd = (g(x + fd_step) - g(x - fd_step)) / (2.0 * fd_step);
  return std::abs(fd + a * std::pow(g(x), beta));
}

}  // namespace ratekit
