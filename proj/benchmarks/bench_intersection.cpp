#include <benchmark/benchmark.h>

#include "jetmorse/chern_ring.hpp"
#include "jetmorse/cone.hpp"
#include "jetmorse/morse.hpp"

namespace {

void BM_ChernEngine(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jetmorse::intersection_polynomials(k));
}
BENCHMARK(BM_ChernEngine)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_IntegralEngine(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jetmorse::fg_via_integrals(k));
}
BENCHMARK(BM_IntegralEngine)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_MaximizeRatio(benchmark::State& state) {
  const auto fg = jetmorse::intersection_polynomials(static_cast<int>(state.range(0)));
  jetmorse::OptimizerConfig cfg;
  cfg.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(jetmorse::maximize_ratio(fg, cfg));
}
BENCHMARK(BM_MaximizeRatio)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
