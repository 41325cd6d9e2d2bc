#include <benchmark/benchmark.h>

#include "ratekit/gamma.hpp"

namespace {

void BM_LogGammaReal(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ratekit::log_gamma({x, 0.0}));
    x += 0.0001;
    if (x > 50.0) x = 0.3;
  }
}
BENCHMARK(BM_LogGammaReal);

void BM_LogGammaLine(benchmark::State& state) {
  // the contour hot path: fixed abscissa, sweeping height
  double t = -40.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ratekit::log_gamma({0.75, t}));
    t += 0.01;
    if (t > 40.0) t = -40.0;
  }
}
BENCHMARK(BM_LogGammaLine);

void BM_MultiplicationResidual(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ratekit::gauss_multiplication_residual({1.7, 2.3}, m));
  }
}
BENCHMARK(BM_MultiplicationResidual)->Arg(2)->Arg(4)->Arg(6);

}  // namespace
