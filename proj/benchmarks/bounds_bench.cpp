#include <benchmark/benchmark.h>

#include "phragmen/bounds.hpp"

namespace {

using namespace phragmen;

void BM_CurveAlphaGeom(benchmark::State& state) {
  const auto family = BoundFamily::parse("alpha-geomshift:0.5");
  for (auto _ : state) benchmark::DoNotOptimize(emit_bound_curve(family, 50, make_rational(1, 100)));
}
BENCHMARK(BM_CurveAlphaGeom);

void BM_CurveBetaExp(benchmark::State& state) {
  const auto family = BoundFamily::parse("beta-exp:0.1");
  for (auto _ : state) benchmark::DoNotOptimize(emit_bound_curve(family, 50, make_rational(1, 100)));
}
BENCHMARK(BM_CurveBetaExp);

void BM_CurveThieleUpper(benchmark::State& state) {
  const auto family = BoundFamily::parse("thiele-upper:pav");
  for (auto _ : state) benchmark::DoNotOptimize(emit_bound_curve(family, 30, make_rational(1, 100)));
}
BENCHMARK(BM_CurveThieleUpper);

}  // namespace
