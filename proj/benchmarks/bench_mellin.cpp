#include <benchmark/benchmark.h>

#include "ratekit/representations.hpp"

namespace {

using namespace ratekit;

MeijerGParams bessel_like(double z) {
  MeijerGParams g;
  g.m = 2;
  g.q = 2;
  g.lower = {0.0, 0.4};
  g.z = z;
  return g;
}

void BM_ResidueSeries(benchmark::State& state) {
  const MeijerGParams g = bessel_like(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(residue_series_eval(g).value);
  }
}
BENCHMARK(BM_ResidueSeries)->Arg(1)->Arg(5)->Arg(20);

void BM_ContourEval(benchmark::State& state) {
  const MeijerGParams g = bessel_like(static_cast<double>(state.range(0)));
  const MellinIntegrand mi = g.integrand();
  const ContourConfig cfg = plan_contour(mi, 1e-12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(contour_eval(mi, cfg).value);
  }
}
BENCHMARK(BM_ContourEval)->Arg(1)->Arg(20);

void BM_AutoEval(benchmark::State& state) {
  IntegralSpec s;
  s.variant = Variant::I1;
  s.alpha = 0.8;
  s.a = 1.0;
  s.b = 1.0;
  s.delta = 1.0;
  s.rho = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(s, EvalMethod::Auto, 1e-9).value);
  }
}
BENCHMARK(BM_AutoEval);

}  // namespace
