#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace phragmen {

// Seeded 64-bit generator (mt19937_64) with distribution helpers whose
// algorithms are fixed here, so a seed yields the same stream on every
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();

  // Uniform integer in [lo, hi], unbiased.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  // Standard normal, Marsaglia polar method.
  double normal();

  // Gamma(shape, 1), Marsaglia-Tsang squeeze; shapes below 1 use
  // Gamma(shape + 1) * U^(1/shape).
  double gamma(double shape);

  // Beta(a, b) as Ga / (Ga + Gb).
  double beta(double a, double b);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for one run of one scenario.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t scenario, std::uint64_t run);

// 2X - 1 for X ~ Beta(a, b): a position in [-1, 1].
double sample_beta_scaled(double a, double b, Rng& rng);

}  // namespace phragmen
