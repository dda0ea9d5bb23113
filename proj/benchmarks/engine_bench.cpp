#include <benchmark/benchmark.h>

#include "phragmen/euclidean.hpp"
#include "phragmen/phragmen.hpp"
#include "phragmen/random_instances.hpp"

namespace {

using namespace phragmen;

Election euclidean(std::uint64_t seed) {
  Rng rng(seed);
  return build_euclidean_election(EuclideanConfig{2, 2, 200, 150, 25, 0.2, seed}, rng).election;
}

void BM_FloatClassicEuclidean(benchmark::State& state) {
  const Election e = euclidean(7);
  for (auto _ : state) {
    auto t = run_phragmen_float(e, SpeedSchedule::constant(), CostFunction::constant());
    benchmark::DoNotOptimize(t.committee);
  }
}
BENCHMARK(BM_FloatClassicEuclidean);

void BM_FloatRegressiveEuclidean(benchmark::State& state) {
  const Election e = euclidean(7);
  const auto beta = CostFunction::exponential(make_rational(9, 10), Rational(100));
  for (auto _ : state) {
    auto t = run_phragmen_float(e, SpeedSchedule::constant(), beta);
    benchmark::DoNotOptimize(t.committee);
  }
}
BENCHMARK(BM_FloatRegressiveEuclidean);

void BM_ExactDegressiveRandom(benchmark::State& state) {
  Rng rng(11);
  const Election e = random_election(static_cast<int>(state.range(0)), 12, 6, rng);
  const auto alpha = SpeedSchedule::geometric(make_rational(1, 2));
  for (auto _ : state) {
    auto t = run_phragmen_exact(e, alpha, CostFunction::constant());
    benchmark::DoNotOptimize(t.committee);
  }
}
BENCHMARK(BM_ExactDegressiveRandom)->Arg(20)->Arg(100);

void BM_ExactExample3(benchmark::State& state) {
  const Election e = example3_instance();
  const auto alpha = SpeedSchedule::power(100);
  for (auto _ : state) {
    auto t = run_phragmen_exact(e, alpha, CostFunction::constant());
    benchmark::DoNotOptimize(t.committee);
  }
}
BENCHMARK(BM_ExactExample3);

}  // namespace
