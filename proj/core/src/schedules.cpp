#include "phragmen/schedules.hpp"

#include <cmath>

#include "phragmen/error.hpp"

namespace phragmen {

// ---------------------------------------------------------------- speeds

SpeedSchedule::SpeedSchedule(Kind kind, Rational q, long p, std::vector<Rational> table)
    : kind_(kind), q_(std::move(q)), p_(p), table_(std::move(table)) {}

SpeedSchedule SpeedSchedule::constant() { return SpeedSchedule(Kind::kConstant, 1, 0, {}); }

SpeedSchedule SpeedSchedule::geometric(Rational q) {
  if (q <= 0) throw InvalidArgument("geometric speed ratio must be positive");
  return SpeedSchedule(Kind::kGeometric, std::move(q), 0, {});
}

SpeedSchedule SpeedSchedule::geometric_shifted(Rational q) {
  if (q <= 0) throw InvalidArgument("geometric speed ratio must be positive");
  return SpeedSchedule(Kind::kGeometricShifted, std::move(q), 0, {});
}

SpeedSchedule SpeedSchedule::power(long p) { return SpeedSchedule(Kind::kPower, 1, p, {}); }

SpeedSchedule SpeedSchedule::table(std::vector<Rational> values) {
  if (values.empty()) throw InvalidArgument("speed table must be nonempty");
  for (const auto& v : values) {
    if (v <= 0) throw InvalidArgument("speeds must be positive");
  }
  return SpeedSchedule(Kind::kTable, 1, 0, std::move(values));
}

Rational SpeedSchedule::exact(long i) const {
  if (i < 1) throw InvalidArgument("speed index must be >= 1");
  switch (kind_) {
    case Kind::kConstant:
      return 1;
    case Kind::kGeometric:
      return pow_int(q_, i - 1);
    case Kind::kGeometricShifted:
      return pow_int(q_, i);
    case Kind::kPower:
      return pow_int(Rational(i), p_);
    case Kind::kTable:
      return table_[std::min<std::size_t>(static_cast<std::size_t>(i - 1), table_.size() - 1)];
  }
  return 1;
}

double SpeedSchedule::approx(long i) const {
  switch (kind_) {
    case Kind::kConstant:
      return 1.0;
    case Kind::kGeometric:
      return std::pow(to_double(q_), static_cast<double>(i - 1));
    case Kind::kGeometricShifted:
      return std::pow(to_double(q_), static_cast<double>(i));
    case Kind::kPower:
      return std::pow(static_cast<double>(i), static_cast<double>(p_));
    case Kind::kTable:
      return to_double(exact(i));
  }
  return 1.0;
}

bool SpeedSchedule::non_increasing_up_to(long upto) const {
  switch (kind_) {
    case Kind::kConstant:
      return true;
    case Kind::kGeometric:
    case Kind::kGeometricShifted:
      return q_ <= 1 || upto <= 1;
    case Kind::kPower:
      return p_ <= 0 || upto <= 1;
    case Kind::kTable:
      for (long i = 1; i < upto; ++i) {
        if (exact(i + 1) > exact(i)) return false;
      }
      return true;
  }
  return false;
}

std::string SpeedSchedule::describe() const {
  switch (kind_) {
    case Kind::kConstant:
      return "alpha(i)=1";
    case Kind::kGeometric:
      return "alpha(i)=(" + to_string(q_) + ")^(i-1)";
    case Kind::kGeometricShifted:
      return "alpha(i)=(" + to_string(q_) + ")^i";
    case Kind::kPower:
      return "alpha(i)=i^" + std::to_string(p_);
    case Kind::kTable:
      return "alpha(i)=table[" + std::to_string(table_.size()) + "]";
  }
  return "alpha";
}

// ----------------------------------------------------------------- costs

CostFunction::CostFunction(Kind kind, Rational base, Rational scale, std::vector<Rational> table)
    : kind_(kind), base_(std::move(base)), scale_(std::move(scale)), table_(std::move(table)) {}

CostFunction CostFunction::constant(Rational value) {
  if (value <= 0) throw InvalidArgument("cost must be positive");
  return CostFunction(Kind::kConstant, std::move(value), 0, {});
}

CostFunction CostFunction::exponential(Rational base, Rational scale) {
  if (base <= 0) throw InvalidArgument("exponential cost base must be positive");
  if (scale <= 0) throw InvalidArgument("exponential cost scale must be positive");
  return CostFunction(Kind::kExponential, std::move(base), std::move(scale), {});
}

CostFunction CostFunction::table(std::vector<Rational> values) {
  if (values.size() < 2) throw InvalidArgument("cost table needs at least two entries");
  for (const auto& v : values) {
    if (v <= 0) throw InvalidArgument("costs must be positive");
  }
  return CostFunction(Kind::kTable, 1, 0, std::move(values));
}

std::optional<Rational> CostFunction::exact(const Rational& x) const {
  switch (kind_) {
    case Kind::kConstant:
      return base_;
    case Kind::kExponential:
      return pow_rational(base_, scale_ * x);
    case Kind::kTable: {
      const Rational pos = x * static_cast<long>(table_.size() - 1);
      if (!is_integer(pos) || pos < 0 || pos > static_cast<long>(table_.size() - 1)) {
        throw InvalidArgument("cost table has no entry at x=" + to_string(x));
      }
      return table_[pos.get_num().get_ui()];
    }
  }
  return std::nullopt;
}

long double CostFunction::approx_long(const Rational& x) const {
  if (kind_ == Kind::kExponential) {
    const long double b = static_cast<long double>(to_double(base_));
    const long double e = static_cast<long double>(to_double(scale_ * x));
    return std::pow(b, e);
  }
  return static_cast<long double>(to_double(*exact(x)));
}

double CostFunction::approx(const Rational& x) const {
  if (kind_ == Kind::kExponential) {
    // Exact when rational keeps float and exact modes consistent at the
    // price level.
    if (auto v = pow_rational(base_, scale_ * x)) return to_double(*v);
    return static_cast<double>(approx_long(x));
  }
  return to_double(*exact(x));
}

bool CostFunction::non_increasing() const {
  switch (kind_) {
    case Kind::kConstant:
      return true;
    case Kind::kExponential:
      return base_ <= 1;
    case Kind::kTable:
      for (std::size_t i = 1; i < table_.size(); ++i) {
        if (table_[i] > table_[i - 1]) return false;
      }
      return true;
  }
  return false;
}

std::string CostFunction::describe() const {
  switch (kind_) {
    case Kind::kConstant:
      return "beta(x)=" + to_string(base_);
    case Kind::kExponential:
      return "beta(x)=(" + to_string(base_) + ")^(" + to_string(scale_) + "x)";
    case Kind::kTable:
      return "beta(x)=table[" + std::to_string(table_.size()) + "]";
  }
  return "beta";
}

// --------------------------------------------------------------- weights

ThieleWeights::ThieleWeights(Kind kind, Rational q, std::vector<Rational> table)
    : kind_(kind), q_(std::move(q)), table_(std::move(table)) {}

ThieleWeights ThieleWeights::pav() { return ThieleWeights(Kind::kPav, 1, {}); }

ThieleWeights ThieleWeights::geometric(Rational q) {
  if (q <= 0 || q > 1) throw InvalidArgument("geometric Thiele ratio must lie in (0, 1]");
  return ThieleWeights(Kind::kGeometric, std::move(q), {});
}

ThieleWeights ThieleWeights::constant() { return ThieleWeights(Kind::kConstant, 1, {}); }

ThieleWeights ThieleWeights::table(std::vector<Rational> values) {
  if (values.empty() || values.front() <= 0) {
    throw InvalidArgument("Thiele table needs a positive first weight");
  }
  return ThieleWeights(Kind::kTable, 1, std::move(values));
}

Rational ThieleWeights::exact(long j) const {
  if (j < 0) throw InvalidArgument("Thiele weight index must be >= 0");
  switch (kind_) {
    case Kind::kPav:
      return j == 0 ? Rational(1) : make_rational(1, j);
    case Kind::kGeometric:
      return pow_int(q_, j);
    case Kind::kConstant:
      return 1;
    case Kind::kTable:
      if (j == 0) return table_.front();
      return static_cast<std::size_t>(j) <= table_.size() ? table_[j - 1] : Rational(0);
  }
  return 0;
}

double ThieleWeights::approx(long j) const { return to_double(exact(j)); }

bool ThieleWeights::valid_up_to(long upto) const {
  if (exact(1) <= 0) return false;
  for (long j = 1; j + 1 <= upto; ++j) {
    if (exact(j + 1) > exact(j)) return false;
    if (j + 2 <= upto && exact(j) - exact(j + 1) < exact(j + 1) - exact(j + 2)) return false;
  }
  return true;
}

std::string ThieleWeights::describe() const {
  switch (kind_) {
    case Kind::kPav:
      return "lambda(j)=1/j";
    case Kind::kGeometric:
      return "lambda(j)=(" + to_string(q_) + ")^j";
    case Kind::kConstant:
      return "lambda(j)=1";
    case Kind::kTable:
      return "lambda(j)=table[" + std::to_string(table_.size()) + "]";
  }
  return "lambda";
}

}  // namespace phragmen
