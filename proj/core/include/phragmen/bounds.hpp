#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phragmen/rational.hpp"
#include "phragmen/schedules.hpp"

namespace phragmen {

// Guaranteed number of representatives (PJR degree) of a cohesive group that
// forms a gamma-fraction of the electorate, for committee size k.
//
// All "largest l such that ..." bounds are evaluated by an integer scan in
// exact arithmetic and clamped to [0, k]. gamma must lie in (0, 1]; at
// gamma = 1 every evaluator returns k except the simple and closed geometric
// forms, whose conditions stay finite there and are evaluated as written.

// Largest l with sum_{i<=l} 1/alpha(i) <= (k-l+1) * gamma/(1-gamma).
long f_alpha_exact(const SpeedSchedule& alpha, const Rational& gamma, long k);

// Largest l with sum_{i<=l} 1/alpha(i) <= gamma * (k+1).
long f_alpha_simple(const SpeedSchedule& alpha, const Rational& gamma, long k);

// floor(log_{1/q}(gamma(k+1)(1/q - 1) + 1) - 1) for alpha(i) = q^(i-1),
// evaluated as the largest e with (1/q)^(e+1) <= gamma(k+1)(1/q-1)+1.
long f_alpha_geometric_closed(const Rational& q, const Rational& gamma, long k);

// floor((k+1) * gamma*beta(1-gamma) / ((1-gamma)*beta(gamma) + gamma*beta(1-gamma))).
// Exact when the price ratio is rational, otherwise long double with a
// 100-digit recomputation whenever the value is within 1e-9 of an integer.
long f_beta(const CostFunction& beta, const Rational& gamma, long k);

// The two-branch simplified beta bound holds for f_beta at (gamma, k).
bool f_beta_simple_check(const CostFunction& beta, const Rational& gamma, long k);

// Largest f <= k with (k-f) * lambda(1+f) >= (1-gamma)/gamma * max_{x in [k]} x*lambda(x).
long thiele_lower(const ThieleWeights& lambda, const Rational& gamma, long k);

// Largest f <= k such that for every x in [1, k-f+1]:
// (k-f+x+1) * lambda(f) >= (1-gamma)/gamma * x*lambda(x). No valid PJR
// degree of the Thiele rule exceeds it.
long thiele_upper(const ThieleWeights& lambda, const Rational& gamma, long k);

// A named bound evaluator used for curves and the CLI.
//
//   alpha-const | alpha-geom:Q | alpha-geomshift:Q   (exact alpha bound)
//   alpha-geom-simple:Q | alpha-geom-closed:Q
//   beta-const  | beta-exp:B[:C]
//   thiele-lower:pav|av|geom:Q    thiele-upper:pav|av|geom:Q
class BoundFamily {
 public:
  enum class Kind {
    kAlphaExact,
    kAlphaSimple,
    kAlphaGeometricClosed,
    kBeta,
    kThieleLower,
    kThieleUpper
  };

  static BoundFamily parse(std::string_view text);
  static BoundFamily alpha_exact(SpeedSchedule alpha);
  static BoundFamily alpha_simple(SpeedSchedule alpha);
  static BoundFamily beta(CostFunction beta);
  static BoundFamily thiele_lower(ThieleWeights lambda);
  static BoundFamily thiele_upper(ThieleWeights lambda);

  Kind kind() const noexcept { return kind_; }
  const std::string& text() const noexcept { return text_; }

  long value(const Rational& gamma, long k) const;

  // The bound before flooring. For the beta bound and the geometric closed
  // form this is the formula itself. Scan-defined bounds are interpolated
  // linearly between the points (thresholds level j, j), closed by (1, k).
  // floor(smooth) == value away from the clamps.
  double smooth(const Rational& gamma, long k) const;

  // Scan-defined families only: entry f is the smallest gamma at which
  // condition f holds (nullopt when it fails on all of (0, 1)). Every
  // condition is monotone in gamma, so value(gamma, k) is the largest f
  // whose threshold is <= gamma.
  std::vector<std::optional<Rational>> thresholds(long k) const;

 private:
  Kind kind_ = Kind::kAlphaExact;
  SpeedSchedule alpha_ = SpeedSchedule::constant();
  CostFunction beta_ = CostFunction::constant();
  ThieleWeights lambda_ = ThieleWeights::pav();
  Rational q_;
  std::string text_;
};

struct BoundCurve {
  long k = 0;
  std::vector<Rational> gamma;          // ascending grid in (0, 1)
  std::vector<Rational> value_over_k;   // floored bound / k
  std::vector<double> smooth_over_k;    // un-floored bound / k
  std::vector<double> derivative;       // forward difference of smooth_over_k
};

// Grid gamma = step, 2*step, ... < 1. The last point uses a backward
// difference.
BoundCurve emit_bound_curve(const BoundFamily& family, long k, const Rational& step);

// Header "gamma,value_over_k,derivative".
std::string to_csv(const BoundCurve& curve);

}  // namespace phragmen
