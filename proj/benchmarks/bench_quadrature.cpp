#include <benchmark/benchmark.h>

#include "ratekit/integrand.hpp"

namespace {

using ratekit::IntegralSpec;
using ratekit::Variant;

IntegralSpec base_spec(Variant v) {
  IntegralSpec s;
  s.variant = v;
  s.alpha = 1.2;
  s.a = 1.0;
  s.b = 0.9;
  s.delta = 1.0;
  s.rho = 0.5;
  if (v == Variant::I1Beta) s.beta = 1.4;
  if (v == Variant::I2Beta) s.beta = 0.5;
  return s;
}

void BM_QuadI1(benchmark::State& state) {
  const IntegralSpec s = base_spec(Variant::I1);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ratekit::quad_eval(s, tol).value);
  }
}
BENCHMARK(BM_QuadI1)->Arg(6)->Arg(9)->Arg(12);

void BM_QuadPathway(benchmark::State& state) {
  const IntegralSpec s =
      base_spec(state.range(0) == 0 ? Variant::I1Beta : Variant::I2Beta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ratekit::quad_eval(s, 1e-9).value);
  }
}
BENCHMARK(BM_QuadPathway)->Arg(0)->Arg(1);

}  // namespace
