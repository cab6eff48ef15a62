#include <benchmark/benchmark.h>

#include "jetmorse/morse.hpp"

using jetmorse::Rational;
using jetmorse::WeightVector;

namespace {

void BM_RestrictedExactOrderTwo(benchmark::State& state) {
  const auto ball = jetmorse::SurfaceModel::ball_quotient();
  const WeightVector a{Rational(0), Rational(1)};
  for (auto _ : state) benchmark::DoNotOptimize(jetmorse::restricted_morse_integral(a, ball));
}
BENCHMARK(BM_RestrictedExactOrderTwo);

void BM_RestrictedBoxesOrderThree(benchmark::State& state) {
  const auto ball = jetmorse::SurfaceModel::ball_quotient();
  const WeightVector a{Rational(0), Rational(0), Rational(1)};
  jetmorse::MorseOptions opt;
  opt.tol = Rational(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jetmorse::restricted_morse_integral(a, ball, opt));
}
BENCHMARK(BM_RestrictedBoxesOrderThree)->Arg(100)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
