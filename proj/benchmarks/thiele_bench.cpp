#include <benchmark/benchmark.h>

#include "phragmen/random_instances.hpp"
#include "phragmen/thiele.hpp"

namespace {

using namespace phragmen;

void BM_ExactPav(benchmark::State& state) {
  Rng rng(3);
  const int m = static_cast<int>(state.range(0));
  const Election e = random_election(30, m, 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_thiele(e, ThieleWeights::pav()));
}
BENCHMARK(BM_ExactPav)->Arg(10)->Arg(16)->Arg(20);

void BM_SeqPav(benchmark::State& state) {
  Rng rng(3);
  const Election e = random_election(200, 150, 25, rng);
  for (auto _ : state) benchmark::DoNotOptimize(seq_thiele(e, ThieleWeights::pav()));
}
BENCHMARK(BM_SeqPav);

}  // namespace
