#include <benchmark/benchmark.h>

#include <cmath>

#include "assocnorm/assocnorm.hpp"

using namespace assocnorm;

namespace {

WeightPair linear_pair() { return WeightPair(Weight::unit(), Weight::power(1.0), 2.0); }

void BM_SolveWindow(benchmark::State& state) {
  const WeightPair pair = linear_pair();
  double t = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_window(pair, t));
    t = t < 100.0 ? t * 1.013 : 0.37;
  }
}
BENCHMARK(BM_SolveWindow);

// custom weights have no closed-form window, so the cache matters there
void BM_WindowLookup(benchmark::State& state) {
  EquilibriumOptions o;
  o.use_cache = state.range(0) != 0;
  const Weight v1 = Weight::custom([](double x) { return x * (1.0 + std::sqrt(x)); }, "x(1+sqrt x)");
  const EquilibriumSolution sol(WeightPair(Weight::unit(), v1, 2.0), o);
  if (o.use_cache) {
    for (double t = 0.5; t < 4.0; t *= 1.0007) benchmark::DoNotOptimize(sol.window(t));
  }
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol.window(t));
    t = t < 4.0 ? t * 1.0007 : 0.5;
  }
}
BENCHMARK(BM_WindowLookup)->Arg(0)->Arg(1);

void BM_WeakNorm(benchmark::State& state) {
  const EquilibriumSolution sol(linear_pair());
  const auto g = fn::hat(1.0, 1.5, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(weak_norm(g, sol, {}).value);
}
BENCHMARK(BM_WeakNorm)->Unit(benchmark::kMillisecond);

void BM_Oscillator(benchmark::State& state) {
  const EquilibriumSolution sol(linear_pair());
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oscillator(fn::constant_on(1.0, 2.0, 1.0), 1.0, 2.0, eps, sol).plan.n);
  }
}
BENCHMARK(BM_Oscillator)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
