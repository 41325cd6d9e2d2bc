#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "ratekit/ode.hpp"
#include "test_support.hpp"

using namespace ratekit;
using namespace ratekit_test;

namespace {

IntegralSpec make(Variant v, double alpha, double a, double b, double delta,
                  double rho, double beta = 0.0) {
  IntegralSpec s;
  s.variant = v;
  s.alpha = alpha;
  s.a = a;
  s.b = b;
  s.delta = delta;
  s.rho = rho;
  if (v == Variant::I1Beta || v == Variant::I2Beta) s.beta = beta;
  return s;
}

std::vector<Complex> strip_samples(Rng& rng, int count, double im_max) {
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    double im = rng.uniform(0.15, im_max);
    if (rng.uniform() < 0.5) im = -im;
    out.emplace_back(rng.uniform(0.3, 1.6), im);
  }
  return out;
}

}  // namespace

TEST_CASE("fd_weights reproduce the classic central stencils") {
  const auto w3 = fd_weights(3, 2, 1.0);
  CHECK(w3[1][0] == doctest::Approx(-0.5));
  CHECK(w3[1][1] == doctest::Approx(0.0));
  CHECK(w3[1][2] == doctest::Approx(0.5));
  CHECK(w3[2][0] == doctest::Approx(1.0));
  CHECK(w3[2][1] == doctest::Approx(-2.0));
  CHECK(w3[2][2] == doctest::Approx(1.0));

  const auto w5 = fd_weights(5, 1, 0.5);
  // f' weights: (1/12, -8/12, 0, 8/12, -1/12) / h
  CHECK(w5[1][0] == doctest::Approx((1.0 / 12.0) / 0.5));
  CHECK(w5[1][1] == doctest::Approx((-8.0 / 12.0) / 0.5));
  CHECK(w5[1][3] == doctest::Approx((8.0 / 12.0) / 0.5));
}

TEST_CASE("operator wiring for the classical theorem at m = 1") {
  const GOperator op = operator_from_theorem(make(Variant::I1, 1, 1, 1, 1, 1));
  CHECK(op.sign == 1);  // (-1)^{m+1} at m = 1
  CHECK(op.m_order == 2);
  REQUIRE(op.lower_shifts.size() == 2);
  CHECK(op.lower_shifts[0] == 0.0);
  CHECK(op.lower_shifts[1] == 1.0);
  CHECK(op.upper_shifts.empty());
}

TEST_CASE("operator wiring for the pathway theorems") {
  // heavy tail, m = 1, alpha = rho = 1, beta = 2: z-factor (eta + 1 - 1)
  const GOperator op2 = operator_from_theorem(make(Variant::I1Beta, 1, 1, 1, 1, 1, 2.0));
  CHECK(op2.sign == 1);
  REQUIRE(op2.upper_shifts.size() == 1);
  CHECK(op2.upper_shifts[0] == doctest::Approx(0.0));  // a1 - 1 = 1/(b-1)... = 0

  // bounded support, m = 2: sign (-1)^m = +1
  const GOperator op3 =
      operator_from_theorem(make(Variant::I2Beta, 1, 1, 1, 1.0, 0.5, 0.5));
  CHECK(op3.sign == 1);
  CHECK(op3.m_order == 3);

  // bounded support, m = 1: sign (-1)^1 = -1
  const GOperator op4 =
      operator_from_theorem(make(Variant::I2Beta, 1, 1, 1, 1, 1, 0.5));
  CHECK(op4.sign == -1);
}

TEST_CASE("operator/reduction coherence, field by field") {
  Rng rng(88);
  for (Variant v : {Variant::I1, Variant::I1Beta, Variant::I2Beta}) {
    for (int m : {1, 2, 3}) {
      IntegralSpec s;
      for (;;) {
        const double rho = rng.uniform(0.5, 1.4);
        s = make(v, rng.uniform(0.4, 1.8), rng.uniform(0.5, 2.0), rng.uniform(0.4, 2.0),
                 m * rho, rho,
                 v == Variant::I1Beta ? rng.uniform(1.2, 2.0) : rng.uniform(0.2, 0.8));
        if (v == Variant::I1Beta && !(s.alpha < 0.7 * s.delta / (s.beta - 1.0)))
          continue;
        break;
      }
      CHECK(operator_from_theorem(s) == operator_from_reduced(reduce(s).g));
    }
  }
}

TEST_CASE("corollary operators replace alpha/(m rho) by alpha exactly") {
  for (int m : {1, 2, 3}) {
    const double alpha = 1.73;
    const GOperator general =
        operator_from_theorem(make(Variant::I1, alpha, 1, 1, 1.0, 1.0 / m));
    CHECK(general.lower_shifts.back() == alpha);
  }
}

TEST_CASE("mellin operator identity vanishes to roundoff") {
  Rng rng(909);

  // spot example: m = 1, alpha = rho = 1, s = 0.7 + 2i
  const IntegralSpec s1 = make(Variant::I1, 1, 1, 1, 1, 1);
  const GOperator op1 = operator_from_theorem(s1);
  const MeijerGParams g1 = reduce(s1).g;
  CHECK(mellin_operator_identity(op1, g1, {Complex(0.7, 2.0)}) < 1e-12);

  // all six families across random draws
  for (Variant v : {Variant::I1, Variant::I1Beta, Variant::I2Beta}) {
    for (bool corollary : {false, true}) {
      for (int draw = 0; draw < 25; ++draw) {
        const int m = static_cast<int>(rng.uniform_int(1, 3));
        IntegralSpec s;
        for (;;) {
          const double rho = corollary ? 1.0 / m : rng.uniform(0.5, 1.4);
          const double delta = corollary ? 1.0 : m * rho;
          s = make(v, rng.uniform(0.4, 1.8), rng.uniform(0.5, 2.0),
                   rng.uniform(0.4, 2.0), delta, rho,
                   v == Variant::I1Beta ? rng.uniform(1.2, 2.0)
                                        : rng.uniform(0.2, 0.8));
          if (v == Variant::I1Beta && !(s.alpha < 0.7 * s.delta / (s.beta - 1.0)))
            continue;
          break;
        }
        const GOperator op = operator_from_theorem(s);
        const MeijerGParams g = reduce(s).g;
        const auto samples = strip_samples(rng, 25, 20.0);
        CHECK(mellin_operator_identity(op, g, samples) < 1e-11);
      }
    }
  }
}

TEST_CASE("perturbed operator is detected (negative control)") {
  Rng rng(910);
  const IntegralSpec s = make(Variant::I1Beta, 1.1, 1.0, 1.0, 1.5, 0.75, 1.5);
  GOperator op = operator_from_theorem(s);
  const MeijerGParams g = reduce(s).g;
  op.lower_shifts.back() += 1e-3;
  const auto samples = strip_samples(rng, 50, 3.0);
  CHECK(mellin_operator_identity(op, g, samples) > 1e-4);
}

TEST_CASE("fd residual: zero function gives exact zero") {
  const GOperator op = operator_from_theorem(make(Variant::I1, 1, 1, 1, 1, 1));
  OdeProbe probe{{0.5, 1.0, 2.0}, 0.05, 5};
  const auto r = fd_residual_fn(op, [](double) { return 0.0; }, probe);
  for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("fd residual annihilates the scaled integral (theorem 1, m = 1)") {
  const IntegralSpec s = make(Variant::I1, 1, 1, 1, 1, 1);
  const GOperator op = operator_from_theorem(s);
  OdeProbe probe{{1.0}, 1e-2, 5};
  const auto r = fd_residual(op, s, probe, 1e-12);
  CHECK(r[0] < 1e-4);
}

TEST_CASE("fd residual for the physical m = 2 case") {
  const IntegralSpec s = make(Variant::I1, 1.0, 1.0, 1.0, 1.0, 0.5);
  const GOperator op = operator_from_theorem(s);
  OdeProbe probe{{0.5, 1.0, 2.0}, 0.06, 7};
  const auto r = fd_residual(op, s, probe, 1e-12);
  for (double v : r) CHECK(v < 1e-3);
}

TEST_CASE("fd residual for the pathway theorems") {
  const IntegralSpec s2 = make(Variant::I1Beta, 0.8, 1.0, 1.0, 1.0, 1.0, 1.4);
  const auto r2 =
      fd_residual(operator_from_theorem(s2), s2, OdeProbe{{0.75, 1.5}, 0.05, 5}, 1e-12);
  for (double v : r2) CHECK(v < 1e-3);

  const IntegralSpec s3 = make(Variant::I2Beta, 1.1, 0.9, 1.0, 1.0, 1.0, 0.5);
  const auto r3 =
      fd_residual(operator_from_theorem(s3), s3, OdeProbe{{0.75, 1.5}, 0.05, 5}, 1e-12);
  for (double v : r3) CHECK(v < 1e-3);
}

TEST_CASE("step refinement shows the expected convergence slope") {
  const IntegralSpec s = make(Variant::I1, 1.0, 1.0, 1.0, 1.0, 1.0);
  const GOperator op = operator_from_theorem(s);
  const FdStudy study = fd_refinement_study(op, s, 1.0, 0.4, 5, 3, 1e-12);
  const double expected = expected_fd_slope(5, op.m_order);
  CHECK(expected == 4.0);
  CHECK(std::abs(study.slope - expected) <= 0.3 * expected);
}

TEST_CASE("refinement into the noise floor raises StepTooSmall") {
  // rough (non-smooth) evaluation noise cannot be differenced away: the
  // residual plateaus and refinement stops helping
  const GOperator op = operator_from_theorem(make(Variant::I1, 1, 1, 1, 1, 1));
  auto noisy = [](double z) {
    const double grain =
        static_cast<double>((static_cast<std::uint64_t>(z * 1e9) * 2654435761u) &
                            0xffffu) /
        0xffff;
    return std::exp(-z) * (1.0 + 1e-5 * grain);
  };
  CHECK_THROWS_AS(fd_refinement_study_fn(op, noisy, 1.0, 0.2, 5, 6, 1e-10),
                  StepTooSmallError);
}

TEST_CASE("expected slope table") {
  CHECK(expected_fd_slope(5, 2) == 4.0);
  CHECK(expected_fd_slope(7, 3) == 4.0);
  CHECK(expected_fd_slope(5, 3) == 2.0);
  CHECK(expected_fd_slope(9, 4) == 6.0);
}
