#include <benchmark/benchmark.h>

#include "quadyn/closure.hpp"
#include "quadyn/constants.hpp"
#include "quadyn/dynamics.hpp"
#include "quadyn/geometry.hpp"
#include "quadyn/solvers.hpp"
#include "quadyn_app/basin.hpp"
#include "quadyn_app/sampling.hpp"

namespace {

using namespace quadyn;

const AngleTuple& seed_tuple() {
  static const AngleTuple q = validate_angles(Quad{1.2, 2.1, 1.5, kTwoPi - 4.8});
  return q;
}

void BM_Step(benchmark::State& state) {
  AngleTuple q = seed_tuple();
  for (auto _ : state) {
    q = step(q);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_Step);

void BM_BalancedEdgesOracle(benchmark::State& state) {
  const AngleTuple& q = seed_tuple();
  for (auto _ : state) {
    benchmark::DoNotOptimize(balanced_edges_oracle(q));
  }
}
BENCHMARK(BM_BalancedEdgesOracle);

void BM_IterateToCycle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate(seed_tuple(), 10000, 1e-12));
  }
}
BENCHMARK(BM_IterateToCycle)->Unit(benchmark::kMicrosecond);

void BM_SolveTrapezoidFixedPoint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_trapezoid_fixed_point(1e-13));
  }
}
BENCHMARK(BM_SolveTrapezoidFixedPoint)->Unit(benchmark::kMicrosecond);

void BM_SolveCycleSystem(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cycle_system(std::nullopt, 1e-12));
  }
}
BENCHMARK(BM_SolveCycleSystem)->Unit(benchmark::kMicrosecond);

void BM_StabilityReport(benchmark::State& state) {
  const AngleTuple q = validate_angles(reference::kGeneralCycle);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability_report(q, 2));
  }
}
BENCHMARK(BM_StabilityReport)->Unit(benchmark::kMicrosecond);

void BM_EigenvalueModuli(benchmark::State& state) {
  const Matrix3 m{{{0.3, -1.2, 0.5}, {0.9, 0.1, -0.4}, {0.2, 0.7, -0.6}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalue_moduli_3x3(m));
  }
}
BENCHMARK(BM_EigenvalueModuli);

void BM_Basin(benchmark::State& state) {
  app::BasinConfig cfg;
  cfg.samples = 200;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(app::run_basin(cfg));
  }
}
BENCHMARK(BM_Basin)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
