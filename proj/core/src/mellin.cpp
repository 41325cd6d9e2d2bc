#include "ratekit/mellin.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace ratekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// signed log-gamma in quad precision; sign from the floor parity on the
// negative axis (signgamq is a global, so it is not used here)
struct SignedLogGammaQ {
  __float128 log_abs;
  int sign;
};

SignedLogGammaQ signed_lgamma_q(__float128 x) {
  if (x > 0.0Q) return {lgammaq(x), 1};
  const __float128 fl = floorq(x);
  if (x == fl) throw PoleError("residue series: gamma argument at a pole");
  const long long parity = static_cast<long long>(fmodq(-fl, 2.0Q));
  return {lgammaq(x), parity == 0 ? 1 : -1};
}

}  // namespace

Complex MellinIntegrand::log_phi(Complex s) const {
  Complex acc = 0.0;
  for (const auto& f : num) acc += log_gamma(f.shift + f.scale * s);
  for (const auto& f : reflected) acc += log_gamma(f.shift - f.scale * s);
  for (const auto& f : den) acc -= log_gamma(f.shift + f.scale * s);
  for (const auto& f : den_reflected) acc -= log_gamma(f.shift - f.scale * s);
  return acc;
}

double MellinIntegrand::left_pole_bound() const {
  double bound = -kInf;
  for (const auto& f : num) bound = std::max(bound, -f.shift.real() / f.scale);
  return bound;
}

double MellinIntegrand::right_pole_bound() const {
  double bound = kInf;
  for (const auto& f : reflected) bound = std::min(bound, f.shift.real() / f.scale);
  return bound;
}

double MellinIntegrand::decay_mass() const {
  double mass = 0.0;
  for (const auto& f : num) mass += f.scale;
  for (const auto& f : reflected) mass += f.scale;
  for (const auto& f : den) mass -= f.scale;
  for (const auto& f : den_reflected) mass -= f.scale;
  return mass;
}

ContourConfig plan_contour(const MellinIntegrand& phi, double tol) {
  tol = std::clamp(tol, 1e-15, 1e-2);
  const double left = phi.left_pole_bound();
  const double right = phi.right_pole_bound();
  if (!(left < right))
    throw ContourError("plan_contour: empty admissible strip");

  const double mass = phi.decay_mass();
  if (!(mass > 0.0))
    throw ContourError("plan_contour: integrand does not decay on the line");

  // default abscissa: 0.75 pushed right of the num poles, clipped into the
  // strip. Kept whenever it is adequately conditioned.
  double c = 0.75 + std::max(0.0, left);
  if (std::isfinite(right) && c > left + 0.6 * (right - left)) {
    c = left + 0.45 * (right - left);
  }

  // For strongly suppressed values (large argument or a heavy denominator
  // parameter) the t = 0 line magnitude at the default abscissa can exceed
  // the integral by many orders, and the trapezoid sum then has no relative
  // accuracy left in double precision. Sliding the line toward the real-axis
  // saddle removes that cancellation, so scan the strip for the magnitude
  // minimum and move when it pays.
  {
    const double log_base = std::log(phi.base);
    auto center_mag = [&](double cc) {
      return phi.log_phi(Complex(cc, 0.0)).real() - cc * log_base;
    };
    const double lo = left + (std::isfinite(right) ? 0.15 * (right - left) : 0.2);
    const double hi = std::isfinite(right) ? right - 0.15 * (right - left)
                                           : left + 240.0;
    double best_c = c;
    double best_m = center_mag(c);
    const int grid = 120;
    for (int i = 0; i <= grid; ++i) {
      const double cc = lo + (hi - lo) * i / grid;
      const double m = center_mag(cc);
      if (m < best_m) {
        best_m = m;
        best_c = cc;
      }
    }
    // move only when the default is more than ~e^2 worse than the best
    if (center_mag(c) > best_m + 2.0) c = best_c;
  }

  // probe the actual log magnitude; algebraic growth on top of the
  // exponential decay makes a closed-form T unreliable
  auto log_mag = [&](double t) {
    return phi.log_phi(Complex(c, t)).real() - c * std::log(phi.base);
  };
  double peak = -kInf;
  for (double t : {0.0, 1.0, 2.5, 5.0}) peak = std::max(peak, log_mag(t));
  const double target = peak + std::log(tol) - 4.0;

  double T = std::max(6.0, 2.0 * (-std::log(tol) + 4.0) / (kPi * mass));
  for (int i = 0; i < 200; ++i) {
    if (log_mag(T) <= target && log_mag(-T) <= target) break;
    T *= 1.25;
    if (T > 4000.0) break;
  }

  // step from the analyticity strip width; the base oscillation narrows the
  // usable aliasing margin
  const double width =
      std::clamp(std::min(c - left, std::isfinite(right) ? right - c : 1.0), 1e-3, 1.0);
  const double h =
      2.0 * kPi * width /
      (-std::log(tol) + width * std::abs(std::log(phi.base)) + 6.0);
  int nodes = static_cast<int>(std::ceil(2.0 * T / h)) + 1;
  if (nodes % 2 == 0) ++nodes;
  nodes = std::min(nodes, 4000001);
  return ContourConfig{c, T, nodes};
}

double shifted_abscissa(const MellinIntegrand& phi, double c) {
  const double left = phi.left_pole_bound();
  const double right = phi.right_pole_bound();
  if (!std::isfinite(right)) return c + 0.35;
  const double up = right - c;
  const double down = c - left;
  return up >= down ? c + 0.45 * up : c - 0.45 * down;
}

namespace {
void require_positive_scales(const MellinIntegrand& phi) {
  for (const auto* group :
       {&phi.num, &phi.den, &phi.reflected, &phi.den_reflected}) {
    for (const auto& f : *group) {
      if (!(f.scale > 0.0))
        throw DomainError("mellin integrand: gamma scales must be positive");
    }
  }
}
}  // namespace

EvalResult contour_eval(const MellinIntegrand& phi, const ContourConfig& cfg,
                        ContourStats* stats) {
  if (!(phi.base > 0.0)) throw DomainError("contour_eval: base must be positive");
  require_positive_scales(phi);
  const double left = phi.left_pole_bound();
  const double right = phi.right_pole_bound();
  if (!(cfg.c > left && cfg.c < right)) {
    throw ContourError("contour_eval: abscissa " + std::to_string(cfg.c) +
                       " outside the pole-separating strip (" + std::to_string(left) +
                       ", " + std::to_string(right) + ")");
  }
  if (cfg.nodes < 5 || !(cfg.half_height > 0.0))
    throw DomainError("contour_eval: bad discretization");

  const int n = (cfg.nodes % 2 == 0) ? cfg.nodes + 1 : cfg.nodes;
  const double T = cfg.half_height;
  const double h = 2.0 * T / (n - 1);
  const double log_base = std::log(phi.base);

  Complex sum_full = 0.0;
  Complex sum_half = 0.0;
  double sum_abs = 0.0;
  double end_mag = 0.0;
  double peak_mag = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = -T + h * k;
    const Complex s(cfg.c, t);
    const Complex g = std::exp(phi.log_phi(s) + phi.log_prefactor - s * log_base);
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    sum_full += w * g;
    sum_abs += w * std::abs(g);
    if (k % 2 == 0) {
      const double w2 = (k == 0 || k == n - 1) ? 0.5 : 1.0;
      sum_half += w2 * g;
    }
    peak_mag = std::max(peak_mag, std::abs(g));
    if (k == 0 || k == n - 1) end_mag = std::max(end_mag, std::abs(g));
  }

  const Complex full = sum_full * (h / (2.0 * kPi));
  const Complex half = sum_half * (2.0 * h / (2.0 * kPi));

  const double mass = phi.decay_mass();
  const double decay_rate = std::max(0.5 * kPi * mass, 0.1);
  const double trunc = 2.0 * end_mag / (2.0 * kPi * decay_rate);
  const double imag = std::abs(full.imag());
  const double round = 4.0 * std::numeric_limits<double>::epsilon() * sum_abs * h /
                       (2.0 * kPi);

  // |S_h - S_2h| is dominated by the coarse grid's aliasing error; trapezoid
  // error decays geometrically in 1/h, so the fine-grid error is closer to
  // the 1.5 power of the observed difference (relative to the sum scale)
  const double raw_disc = std::abs(full - half);
  const double scale = std::max(std::abs(full), 1e-300);
  const double disc =
      std::min(raw_disc, std::pow(raw_disc, 1.5) / std::sqrt(scale)) + 10.0 * round;

  const double value = full.real();
  if (stats != nullptr) {
    stats->imag_abs = imag;
    stats->discretization = disc;
    stats->truncation = trunc;
  }
  // a short contour shows up as endpoints still carrying a visible share of
  // the line mass; totally underflowed integrals (everything ~0) are not a
  // configuration error and return their tiny estimate instead
  if (trunc > 1e-6 * std::max(std::abs(value), 1e-300) &&
      end_mag > 1e-10 * peak_mag) {
    throw TruncationError(
        "contour_eval: integrand mass at +-iT is " + std::to_string(trunc) +
        " against value " + std::to_string(value) + "; increase half_height");
  }
  if (!std::isfinite(value)) {
    throw ContourError("contour_eval: non-finite sum");
  }
  return EvalResult{value, disc + trunc + imag + round, Method::MellinBarnes,
                    static_cast<long>(n)};
}

void MeijerGParams::validate() const {
  if (m < 0 || n < 0 || p < 0 || q < 0 || m > q || n > p)
    throw DomainError("MeijerGParams: need 0 <= m <= q and 0 <= n <= p");
  if (static_cast<int>(upper.size()) != p || static_cast<int>(lower.size()) != q)
    throw DomainError("MeijerGParams: parameter list sizes must match p and q");
  if (!(z > 0.0)) throw DomainError("MeijerGParams: z must be positive");
  // separability: poles of Gamma(b_j+s) at -b_j-k must avoid poles of
  // Gamma(1-a_i-s) at 1-a_i+l, i.e. a_i - b_j must not be a positive integer
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double d = upper[i] - lower[j];
      if (d > 0.5 && std::abs(d - std::round(d)) < 1e-9) {
        throw DomainError("MeijerGParams: contour cannot separate pole sets "
                          "(a_" + std::to_string(i + 1) + " - b_" +
                          std::to_string(j + 1) + " is a positive integer)");
      }
    }
  }
}

MellinIntegrand MeijerGParams::integrand(double log_prefactor) const {
  validate();
  MellinIntegrand mi;
  mi.base = z;
  mi.log_prefactor = log_prefactor;
  for (int j = 0; j < m; ++j) mi.num.push_back({Complex(lower[j], 0.0), 1.0});
  for (int j = m; j < q; ++j)
    mi.den_reflected.push_back({Complex(1.0 - lower[j], 0.0), 1.0});
  for (int i = 0; i < n; ++i)
    mi.reflected.push_back({Complex(1.0 - upper[i], 0.0), 1.0});
  for (int i = n; i < p; ++i) mi.den.push_back({Complex(upper[i], 0.0), 1.0});
  return mi;
}

EvalResult residue_series_eval(const MeijerGParams& g, int max_terms, double rel_tol,
                               double log_prefactor) {
  g.validate();
  if (g.n > 1 || g.p > 1)
    throw DomainError("residue_series_eval: only the n <= 1, p <= 1 shapes are supported");
  if (g.q <= g.p)
    throw DomainError("residue_series_eval: series requires q > p");
  for (int i = 0; i < g.m; ++i) {
    for (int j = i + 1; j < g.m; ++j) {
      const double d = g.lower[i] - g.lower[j];
      if (std::abs(d - std::round(d)) < 1e-9) {
        throw CoincidentPoleError(
            "residue_series_eval: lower parameters " + std::to_string(g.lower[i]) +
            " and " + std::to_string(g.lower[j]) +
            " differ by an integer; use contour_eval");
      }
    }
  }

  // Accumulated in quad precision: for the p = 1 shapes near the top of the
  // useful z range the pole families cancel by factors up to ~exp(2z), which
  // no 64- or 80-bit accumulation survives at the 1e-9 agreement target.
  const __float128 lz = logq(static_cast<__float128>(g.z));
  const __float128 lpref = log_prefactor;
  __float128 sum = 0.0Q;
  __float128 max_mag = 0.0Q;
  __float128 last_mag = 0.0Q;
  long work = 0;

  for (int j = 0; j < g.m; ++j) {
    const __float128 bj = g.lower[j];
    int small_run = 0;
    int growth_run = 0;
    __float128 prev_mag = HUGE_VALQ;
    bool settled = false;

    for (int k = 0; k < max_terms; ++k) {
      ++work;
      int sign = (k % 2 == 0) ? 1 : -1;
      __float128 logmag =
          lpref + (bj + k) * lz - lgammaq(static_cast<__float128>(k) + 1.0Q);
      bool zero = false;

      auto mul_gamma = [&](__float128 arg, bool numerator) {
        if (!numerator) {
          // reciprocal gamma vanishes at nonpositive integers
          const __float128 r = roundq(arg);
          if (r <= 0.0Q && fabsq(arg - r) < 1e-25Q) {
            zero = true;
            return;
          }
        }
        const SignedLogGammaQ slg = signed_lgamma_q(arg);
        logmag += numerator ? slg.log_abs : -slg.log_abs;
        sign *= slg.sign;
      };

      for (int i = 0; i < g.m && !zero; ++i) {
        if (i != j) mul_gamma(static_cast<__float128>(g.lower[i]) - bj - k, true);
      }
      for (int i = g.m; i < g.q && !zero; ++i) {
        mul_gamma(1.0Q - static_cast<__float128>(g.lower[i]) + bj + k, false);
      }
      for (int i = 0; i < g.n && !zero; ++i) {
        mul_gamma(1.0Q - static_cast<__float128>(g.upper[i]) + bj + k, true);
      }
      for (int i = g.n; i < g.p && !zero; ++i) {
        mul_gamma(static_cast<__float128>(g.upper[i]) - bj - k, false);
      }

      const __float128 mag = zero ? 0.0Q : expq(logmag);
      if (!zero) sum += sign * mag;
      if (mag > max_mag) max_mag = mag;
      last_mag = mag;

      if (mag > prev_mag) {
        if (++growth_run >= max_terms)
          throw DivergenceError("residue_series_eval: terms kept growing");
      } else {
        growth_run = 0;
      }
      prev_mag = mag;

      // two-sided cutoff: the requested relative tolerance against the
      // running sum, but never coarser than the quad-precision noise floor
      // of the largest term seen. Partial sums can sit many orders above the
      // final value when pole families cancel, and a purely relative rule
      // would truncate the later families too early.
      const __float128 rel_part = 0.1Q * rel_tol * fabsq(sum);
      __float128 threshold = 5e-33Q * max_mag;
      if (rel_part < threshold) threshold = rel_part;
      if (mag <= threshold + 1e-400Q) {
        if (++small_run >= 10 && k >= 8) {
          settled = true;
          break;
        }
      } else {
        small_run = 0;
      }
    }
    if (!settled) {
      throw DivergenceError(
          "residue_series_eval: series did not settle within max_terms = " +
          std::to_string(max_terms));
    }
  }

  const double value = static_cast<double>(sum);
  if (!std::isfinite(value)) {
    throw DivergenceError("residue_series_eval: non-finite sum");
  }
  const double est =
      static_cast<double>(1e-31Q * max_mag + 2.0Q * last_mag) +
      4.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  return EvalResult{value, est, Method::ResidueSeries, work};
}

MellinIntegrand integral_to_mellin(const IntegralSpec& spec) {
  spec.validate();
  if (spec.variant == Variant::I2) {
    throw UnsupportedVariantError(
        "integral_to_mellin: generic-cutoff I2 has no closed Mellin form");
  }
  if (!(spec.b > 0.0))
    throw DomainError("integral_to_mellin: b must be positive");

  const double ad = spec.alpha / spec.delta;
  MellinIntegrand mi;
  mi.num.push_back({Complex(0.0, 0.0), 1.0 / spec.rho});
  mi.num.push_back({Complex(ad, 0.0), 1.0 / spec.delta});

  switch (spec.variant) {
    case Variant::I1:
      mi.base = std::pow(spec.a, 1.0 / spec.delta) * std::pow(spec.b, 1.0 / spec.rho);
      mi.log_prefactor = -std::log(spec.delta * spec.rho) - ad * std::log(spec.a);
      break;
    case Variant::I1Beta: {
      const double kappa = spec.a * (spec.beta - 1.0);
      const double e = 1.0 / (spec.beta - 1.0);
      mi.reflected.push_back({Complex(e - ad, 0.0), 1.0 / spec.delta});
      mi.base = std::pow(kappa, 1.0 / spec.delta) * std::pow(spec.b, 1.0 / spec.rho);
      mi.log_prefactor = -log_gamma(Complex(e, 0.0)).real() -
                         std::log(spec.rho * spec.delta) - ad * std::log(kappa);
      break;
    }
    case Variant::I2Beta: {
      const double kappa = spec.a * (1.0 - spec.beta);
      const double e = 1.0 / (1.0 - spec.beta);
      mi.den.push_back({Complex(ad + 1.0 + e, 0.0), 1.0 / spec.delta});
      mi.base = std::pow(kappa, 1.0 / spec.delta) * std::pow(spec.b, 1.0 / spec.rho);
      mi.log_prefactor = log_gamma(Complex(1.0 + e, 0.0)).real() -
                         std::log(spec.rho * spec.delta) - ad * std::log(kappa);
      break;
    }
    default:
      break;
  }
  return mi;
}

}  // namespace ratekit
