#include <benchmark/benchmark.h>

#include <besseldelta/arith.hpp>
#include <besseldelta/delta_core.hpp>
#include <besseldelta/forms.hpp>
#include <besseldelta/special_fn.hpp>
#include <besseldelta/sums.hpp>
#include <cmath>

using namespace bdelta;

static void BM_BesselJReal(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(BesselOrder::real(11), x));
}
BENCHMARK(BM_BesselJReal)->Arg(5)->Arg(40)->Arg(1000);

static void BM_BesselJImaginary(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(BesselOrder::imaginary(2), x));
}
BENCHMARK(BM_BesselJImaginary)->Arg(5)->Arg(40)->Arg(1000);

static void BM_KernelSplit(benchmark::State& state) {
  const KernelSplit split(BesselKernel::holomorphic(12));
  double y = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(split.at(y));
    y = y < 1e4 ? y * 1.001 : 100.0;
  }
}
BENCHMARK(BM_KernelSplit);

static void BM_BesselIntegral(benchmark::State& state) {
  DeltaParams p;
  p.X = 1e5;
  const double b = std::sqrt(static_cast<double>(state.range(0)) / p.X);
  for (auto _ : state) benchmark::DoNotOptimize(i_g(p, b, b));
}
BENCHMARK(BM_BesselIntegral)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_DeltaSingleModulus(benchmark::State& state) {
  DeltaParams p;
  for (auto _ : state) benchmark::DoNotOptimize(delta_single_modulus(p, 13, 1000, 1013));
}
BENCHMARK(BM_DeltaSingleModulus)->Unit(benchmark::kMillisecond);

static void BM_Kloosterman(benchmark::State& state) {
  const i64 c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman(3, 7, c));
}
BENCHMARK(BM_Kloosterman)->Arg(101)->Arg(10007);

static void BM_TauTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tau_table(state.range(0)));
}
BENCHMARK(BM_TauTable)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_SmoothExpSum(benchmark::State& state) {
  const double N = static_cast<double>(state.range(0));
  const RamanujanDelta coeffs(static_cast<i64>(2 * N) + 1, false);
  const SmoothBump V = SmoothBump::canonical();
  for (auto _ : state) benchmark::DoNotOptimize(smooth_exp_sum(coeffs, PhaseSpec::square(std::pow(N, 0.9), N), V));
}
BENCHMARK(BM_SmoothExpSum)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
