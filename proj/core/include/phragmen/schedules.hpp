#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phragmen/rational.hpp"

namespace phragmen {

// Earning speed alpha(i) of a voter who has already paid for i-1 candidates.
class SpeedSchedule {
 public:
  enum class Kind { kConstant, kGeometric, kGeometricShifted, kPower, kTable };

  // alpha(i) = 1.
  static SpeedSchedule constant();
  // alpha(i) = q^(i-1).
  static SpeedSchedule geometric(Rational q);
  // alpha(i) = q^i.
  static SpeedSchedule geometric_shifted(Rational q);
  // alpha(i) = i^p, p may be negative.
  static SpeedSchedule power(long p);
  // alpha(i) = values[i-1]; the last entry repeats past the end.
  static SpeedSchedule table(std::vector<Rational> values);

  Kind kind() const noexcept { return kind_; }
  const Rational& ratio() const noexcept { return q_; }

  Rational exact(long i) const;
  double approx(long i) const;

  // alpha(1) >= alpha(2) >= ... >= alpha(upto).
  bool non_increasing_up_to(long upto) const;

  std::string describe() const;

 private:
  SpeedSchedule(Kind kind, Rational q, long p, std::vector<Rational> table);

  Kind kind_;
  Rational q_;
  long p_ = 0;
  std::vector<Rational> table_;
};

// Price beta(x) of a candidate approved by an x-fraction of the voters.
class CostFunction {
 public:
  enum class Kind { kConstant, kExponential, kTable };

  // beta(x) = value.
  static CostFunction constant(Rational value = Rational(1));
  // beta(x) = base^(scale * x).
  static CostFunction exponential(Rational base, Rational scale);
  // beta(j / (values.size()-1)) = values[j]; other arguments are rejected.
  static CostFunction table(std::vector<Rational> values);

  Kind kind() const noexcept { return kind_; }
  const Rational& base() const noexcept { return base_; }
  const Rational& scale() const noexcept { return scale_; }

  // Exact value when it is rational; nullopt when irrational.
  std::optional<Rational> exact(const Rational& x) const;
  double approx(const Rational& x) const;
  long double approx_long(const Rational& x) const;

  // beta(a) >= beta(b) for a <= b is guaranteed by construction for
  // constant and exponential forms with base <= 1; tables are checked.
  bool non_increasing() const;

  std::string describe() const;

 private:
  CostFunction(Kind kind, Rational base, Rational scale, std::vector<Rational> table);

  Kind kind_;
  Rational base_;
  Rational scale_;
  std::vector<Rational> table_;
};

// Thiele weights lambda(j), j >= 1.
class ThieleWeights {
 public:
  enum class Kind { kPav, kGeometric, kConstant, kTable };

  static ThieleWeights pav();
  // lambda(j) = q^j.
  static ThieleWeights geometric(Rational q);
  // Approval voting, lambda(j) = 1.
  static ThieleWeights constant();
  // lambda(j) = values[j-1]; zero past the end.
  static ThieleWeights table(std::vector<Rational> values);

  Kind kind() const noexcept { return kind_; }
  const Rational& ratio() const noexcept { return q_; }

  // lambda(0) is defined as q^0 = 1 for geometric weights, 1 for AV and
  // lambda(1) otherwise; only the Thiele upper bound queries it.
  Rational exact(long j) const;
  double approx(long j) const;

  // Non-increasing and convex on 1..upto, lambda(1) > 0.
  bool valid_up_to(long upto) const;

  std::string describe() const;

 private:
  ThieleWeights(Kind kind, Rational q, std::vector<Rational> table);

  Kind kind_;
  Rational q_;
  std::vector<Rational> table_;
};

}  // namespace phragmen
