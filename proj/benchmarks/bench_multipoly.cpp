#include <benchmark/benchmark.h>

#include "jetmorse/multipoly.hpp"

using jetmorse::MultiPoly;
using jetmorse::Rational;

namespace {

MultiPoly dense_sum(const jetmorse::ContextPtr& ctx) {
  MultiPoly p = MultiPoly::constant(ctx, Rational(1));
  for (std::size_t i = 0; i < ctx->size(); ++i) p += Rational(static_cast<long>(i) + 1, 3) * MultiPoly::variable(ctx, i);
  return p;
}

void BM_Power(benchmark::State& state) {
  const auto ctx = jetmorse::make_context({"a", "b", "c", "d"});
  const MultiPoly p = dense_sum(ctx);
  for (auto _ : state) benchmark::DoNotOptimize(p.pow(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Power)->Arg(4)->Arg(8)->Arg(12);

void BM_IntegrateBox(benchmark::State& state) {
  const auto ctx = jetmorse::make_context({"x1", "x2", "x3", "a"});
  const MultiPoly p = dense_sum(ctx).pow(static_cast<unsigned>(state.range(0)));
  const std::vector<jetmorse::BoxBound> box{
      {"x1", Rational(0), Rational(1)}, {"x2", Rational(0), Rational(1)}, {"x3", Rational(0), Rational(1)}};
  for (auto _ : state) benchmark::DoNotOptimize(p.integrate_box(box));
}
BENCHMARK(BM_IntegrateBox)->Arg(4)->Arg(8);

void BM_Evaluate(benchmark::State& state) {
  const auto ctx = jetmorse::make_context({"a", "b", "c", "d"});
  const MultiPoly p = dense_sum(ctx).pow(8);
  const std::vector<Rational> v{Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(5, 7)};
  for (auto _ : state) benchmark::DoNotOptimize(p.evaluate(v));
}
BENCHMARK(BM_Evaluate);

}  // namespace
