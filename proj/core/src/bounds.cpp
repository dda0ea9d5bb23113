#include "phragmen/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include "phragmen/error.hpp"

namespace phragmen {

namespace {

using HighFloat = boost::multiprecision::cpp_bin_float_100;

void check_query(const Rational& gamma, long k) {
  if (k < 1) throw InvalidArgument("k must be positive");
  if (gamma <= 0 || gamma > 1) throw InvalidArgument("gamma must lie in (0, 1], got " + to_string(gamma));
}

void check_alpha(const SpeedSchedule& alpha, long k) {
  if (!alpha.non_increasing_up_to(k + 1)) throw InvalidArgument("alpha must be non-increasing for PJR bounds");
  if (alpha.exact(1) > 1) throw InvalidArgument("alpha values must lie in (0, 1]");
}

void check_lambda(const ThieleWeights& lambda, long k) {
  if (!lambda.valid_up_to(k + 1)) throw InvalidArgument("lambda must be positive, non-increasing and convex");
}

// Largest l in [0, k] whose slack(l) >= 0, or nullopt.
std::optional<long> largest_satisfying(long k, const std::function<Rational(long)>& slack) {
  std::optional<long> best;
  for (long l = 0; l <= k; ++l) {
    if (slack(l) >= 0) best = l;
  }
  return best;
}

Rational odds(const Rational& gamma) { return gamma / (1 - gamma); }

std::function<Rational(long)> alpha_exact_slack(const SpeedSchedule& alpha, const Rational& gamma, long k) {
  // Prefix sums of inverse speeds, shared by every call.
  auto prefix = std::make_shared<std::vector<Rational>>(1, Rational(0));
  for (long i = 1; i <= k; ++i) prefix->push_back(prefix->back() + 1 / alpha.exact(i));
  const Rational g = odds(gamma);
  return [prefix, g, k](long l) -> Rational { return (k - l + 1) * g - (*prefix)[l]; };
}

std::function<Rational(long)> alpha_simple_slack(const SpeedSchedule& alpha, const Rational& gamma, long k) {
  auto prefix = std::make_shared<std::vector<Rational>>(1, Rational(0));
  for (long i = 1; i <= k; ++i) prefix->push_back(prefix->back() + 1 / alpha.exact(i));
  const Rational budget = gamma * (k + 1);
  return [prefix, budget](long l) -> Rational { return budget - (*prefix)[l]; };
}

Rational max_x_lambda(const ThieleWeights& lambda, long k) {
  Rational best = 0;
  for (long x = 1; x <= k; ++x) {
    Rational v = x * lambda.exact(x);
    if (v > best) best = v;
  }
  return best;
}

std::function<Rational(long)> thiele_lower_slack(const ThieleWeights& lambda, const Rational& gamma, long k) {
  const Rational rhs = (1 - gamma) / gamma * max_x_lambda(lambda, k);
  return [lambda, rhs, k](long f) -> Rational { return (k - f) * lambda.exact(1 + f) - rhs; };
}

std::function<Rational(long)> thiele_upper_slack(const ThieleWeights& lambda, const Rational& gamma, long k) {
  const Rational ratio = (1 - gamma) / gamma;
  return [lambda, ratio, k](long f) -> Rational {
    if (f == 0) return 0;
    std::optional<Rational> worst;
    for (long x = 1; x <= k - f + 1; ++x) {
      Rational s = (k - f + x + 1) * lambda.exact(f) - ratio * x * lambda.exact(x);
      if (!worst || s < *worst) worst = s;
    }
    return worst.value_or(Rational(0));
  };
}

// Smallest gamma at which condition f holds, per f = 0..k; nullopt when
// it never holds below 1. Each condition reads gamma/(1-gamma) >= g_f, so
// the threshold is g_f / (1 + g_f).
std::optional<Rational> from_odds(const std::optional<Rational>& g) {
  if (!g) return std::nullopt;
  if (*g <= 0) return Rational(0);
  return *g / (1 + *g);
}

std::vector<std::optional<Rational>> alpha_thresholds(const SpeedSchedule& alpha, long k, bool simple) {
  std::vector<std::optional<Rational>> out;
  Rational sum = 0;
  for (long l = 0; l <= k; ++l) {
    if (l > 0) sum += 1 / alpha.exact(l);
    if (simple) {
      const Rational t = sum / (k + 1);
      out.push_back(t <= 1 ? std::optional<Rational>(t) : std::nullopt);
    } else {
      out.push_back(from_odds(sum / (k - l + 1)));
    }
  }
  return out;
}

std::vector<std::optional<Rational>> thiele_lower_thresholds(const ThieleWeights& lambda, long k) {
  const Rational m = max_x_lambda(lambda, k);
  std::vector<std::optional<Rational>> out;
  for (long f = 0; f <= k; ++f) {
    const Rational h = (k - f) * lambda.exact(1 + f);
    // (1-gamma)/gamma <= h / m.
    out.push_back(h > 0 ? from_odds(std::optional<Rational>(m / h)) : std::nullopt);
  }
  return out;
}

std::vector<std::optional<Rational>> thiele_upper_thresholds(const ThieleWeights& lambda, long k) {
  std::vector<std::optional<Rational>> out{Rational(0)};
  for (long f = 1; f <= k; ++f) {
    std::optional<Rational> worst;
    bool never = false;
    for (long x = 1; x <= k - f + 1; ++x) {
      const Rational lhs = (k - f + x + 1) * lambda.exact(f);
      const Rational rhs = x * lambda.exact(x);
      if (rhs == 0) continue;
      if (lhs == 0) {
        never = true;
        break;
      }
      const Rational g = rhs / lhs;
      if (!worst || g > *worst) worst = g;
    }
    if (never) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(worst ? from_odds(worst) : std::optional<Rational>(Rational(0)));
    }
  }
  return out;
}

// First gamma at which the bound reaches j: the minimum threshold over f >= j.
std::vector<std::optional<Rational>> level_anchors(const std::vector<std::optional<Rational>>& per_f) {
  std::vector<std::optional<Rational>> out(per_f.size());
  std::optional<Rational> best;
  for (std::size_t i = per_f.size(); i-- > 0;) {
    if (per_f[i] && (!best || *per_f[i] < *best)) best = per_f[i];
    out[i] = best;
  }
  return out;
}

// Piecewise-linear curve through (anchor_j, j), closed by (1, top).
Rational interpolate_levels(const std::vector<std::optional<Rational>>& anchors, const Rational& gamma,
                            long top) {
  long level = 0;
  for (long j = 0; j <= top; ++j) {
    if (anchors[static_cast<std::size_t>(j)] && *anchors[static_cast<std::size_t>(j)] <= gamma) level = j;
  }
  if (level >= top) return Rational(top);
  const Rational lo = anchors[static_cast<std::size_t>(level)].value_or(Rational(0));
  Rational hi = 1;
  long next = top;
  for (long j = level + 1; j <= top; ++j) {
    if (anchors[static_cast<std::size_t>(j)]) {
      hi = *anchors[static_cast<std::size_t>(j)];
      next = j;
      break;
    }
  }
  if (hi <= lo) return Rational(level);
  return level + (next - level) * (gamma - lo) / (hi - lo);
}

long clamp_k(long v, long k) { return std::clamp(v, 0L, k); }

// Ratio beta(1-gamma)/beta(gamma), exact when rational.
std::optional<Rational> exact_price_ratio(const CostFunction& beta, const Rational& gamma) {
  if (beta.kind() == CostFunction::Kind::kExponential) {
    return pow_rational(beta.base(), beta.scale() * (1 - 2 * gamma));
  }
  auto lo = beta.exact(gamma);
  auto hi = beta.exact(1 - gamma);
  if (!lo || !hi) return std::nullopt;
  return *hi / *lo;
}

HighFloat high_price_ratio(const CostFunction& beta, const Rational& gamma) {
  const Rational e = beta.scale() * (1 - 2 * gamma);
  HighFloat exponent = HighFloat(e.get_num().get_str()) / HighFloat(e.get_den().get_str());
  HighFloat base = HighFloat(beta.base().get_num().get_str()) / HighFloat(beta.base().get_den().get_str());
  return boost::multiprecision::exp(exponent * boost::multiprecision::log(base));
}

// (k+1) * gamma * r / ((1-gamma) + gamma*r), r = beta(1-gamma)/beta(gamma).
template <typename T>
T beta_expression(const T& r, const T& gamma, long k) {
  return T(k + 1) * gamma * r / ((T(1) - gamma) + gamma * r);
}

}  // namespace

long f_alpha_exact(const SpeedSchedule& alpha, const Rational& gamma, long k) {
  check_query(gamma, k);
  check_alpha(alpha, k);
  if (gamma == 1) return k;
  return largest_satisfying(k, alpha_exact_slack(alpha, gamma, k)).value_or(0);
}

long f_alpha_simple(const SpeedSchedule& alpha, const Rational& gamma, long k) {
  check_query(gamma, k);
  check_alpha(alpha, k);
  return largest_satisfying(k, alpha_simple_slack(alpha, gamma, k)).value_or(0);
}

long f_alpha_geometric_closed(const Rational& q, const Rational& gamma, long k) {
  check_query(gamma, k);
  if (q <= 0 || q >= 1) throw InvalidArgument("geometric closed form needs 0 < q < 1");
  const Rational r = 1 / q;
  const Rational x = gamma * (k + 1) * (r - 1) + 1;
  long e = -1;
  Rational power = r;  // r^(e+2)
  while (power <= x && e < k) {
    ++e;
    power *= r;
  }
  return clamp_k(e, k);
}

namespace {

long f_beta_value(const CostFunction& beta, const Rational& gamma, long k, const Rational& scale_by) {
  // Evaluates floor((k+1) * gamma * r / ((1-gamma) + gamma*r) * scale_by)
  // where scale_by is 1 for the bound itself.
  if (gamma == 1) return k;
  if (auto r = exact_price_ratio(beta, gamma)) {
    return clamp_k(floor_to_long(beta_expression<Rational>(*r, gamma, k) * scale_by), k);
  }
  if (beta.kind() != CostFunction::Kind::kExponential) {
    throw InvalidArgument("cannot evaluate " + beta.describe());
  }
  const long double sb = static_cast<long double>(to_double(scale_by));
  const Rational e = beta.scale() * (1 - 2 * gamma);
  const long double r = std::pow(static_cast<long double>(to_double(beta.base())),
                                 static_cast<long double>(to_double(e)));
  const long double v = beta_expression<long double>(r, static_cast<long double>(to_double(gamma)), k) * sb;
  const long double nearest = std::round(v);
  if (std::fabs(v - nearest) > 1e-9L) return clamp_k(static_cast<long>(std::floor(v)), k);
  const HighFloat hg = HighFloat(gamma.get_num().get_str()) / HighFloat(gamma.get_den().get_str());
  const HighFloat hs = HighFloat(scale_by.get_num().get_str()) / HighFloat(scale_by.get_den().get_str());
  const HighFloat hv = beta_expression<HighFloat>(high_price_ratio(beta, gamma), hg, k) * hs;
  const HighFloat hn = boost::multiprecision::round(hv);
  // An irrational ratio cannot land exactly on an integer; within 1e-80 we
  // take the integer.
  if (boost::multiprecision::abs(hv - hn) < HighFloat("1e-80")) return clamp_k(hn.convert_to<long>(), k);
  return clamp_k(boost::multiprecision::floor(hv).convert_to<long>(), k);
}

}  // namespace

long f_beta(const CostFunction& beta, const Rational& gamma, long k) {
  check_query(gamma, k);
  if (!beta.non_increasing()) throw InvalidArgument("beta must be non-increasing for PJR bounds");
  return f_beta_value(beta, gamma, k, Rational(1));
}

bool f_beta_simple_check(const CostFunction& beta, const Rational& gamma, long k) {
  const long value = f_beta(beta, gamma, k);
  bool ok = true;
  if (gamma >= make_rational(1, 2)) ok = ok && value >= clamp_k(floor_to_long((k + 1) * gamma), k);
  if (gamma <= make_rational(1, 2)) {
    // floor((k+1) * gamma * beta(1-gamma)/beta(gamma)).
    long simple = 0;
    if (auto r = exact_price_ratio(beta, gamma)) {
      simple = floor_to_long((k + 1) * gamma * *r);
    } else {
      const Rational e = beta.scale() * (1 - 2 * gamma);
      const long double ratio = std::pow(static_cast<long double>(to_double(beta.base())),
                                         static_cast<long double>(to_double(e)));
      simple = static_cast<long>(std::floor(static_cast<long double>(k + 1) *
                                            static_cast<long double>(to_double(gamma)) * ratio));
    }
    ok = ok && value >= clamp_k(simple, k);
  }
  return ok;
}

long thiele_lower(const ThieleWeights& lambda, const Rational& gamma, long k) {
  check_query(gamma, k);
  check_lambda(lambda, k);
  if (gamma == 1) return k;
  return largest_satisfying(k, thiele_lower_slack(lambda, gamma, k)).value_or(0);
}

long thiele_upper(const ThieleWeights& lambda, const Rational& gamma, long k) {
  check_query(gamma, k);
  check_lambda(lambda, k);
  if (gamma == 1) return k;
  return largest_satisfying(k, thiele_upper_slack(lambda, gamma, k)).value_or(0);
}

// ------------------------------------------------------------- families

namespace {

std::vector<std::string> split_colon(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

ThieleWeights parse_weights(std::string_view full, const std::vector<std::string>& p) {
  if (p.size() == 2 && p[1] == "pav") return ThieleWeights::pav();
  if (p.size() == 2 && p[1] == "av") return ThieleWeights::constant();
  if (p.size() == 3 && p[1] == "geom") return ThieleWeights::geometric(parse_rational(p[2]));
  throw InvalidArgument("bad bound family '" + std::string(full) + "'");
}

}  // namespace

BoundFamily BoundFamily::alpha_exact(SpeedSchedule alpha) {
  BoundFamily f;
  f.kind_ = Kind::kAlphaExact;
  f.text_ = "alpha-exact[" + alpha.describe() + "]";
  f.alpha_ = std::move(alpha);
  return f;
}

BoundFamily BoundFamily::alpha_simple(SpeedSchedule alpha) {
  BoundFamily f = alpha_exact(std::move(alpha));
  f.kind_ = Kind::kAlphaSimple;
  f.text_ = "alpha-simple[" + f.alpha_.describe() + "]";
  return f;
}

BoundFamily BoundFamily::beta(CostFunction beta) {
  BoundFamily f;
  f.kind_ = Kind::kBeta;
  f.text_ = "beta[" + beta.describe() + "]";
  f.beta_ = std::move(beta);
  return f;
}

BoundFamily BoundFamily::thiele_lower(ThieleWeights lambda) {
  BoundFamily f;
  f.kind_ = Kind::kThieleLower;
  f.text_ = "thiele-lower[" + lambda.describe() + "]";
  f.lambda_ = std::move(lambda);
  return f;
}

BoundFamily BoundFamily::thiele_upper(ThieleWeights lambda) {
  BoundFamily f = thiele_lower(std::move(lambda));
  f.kind_ = Kind::kThieleUpper;
  f.text_ = "thiele-upper[" + f.lambda_.describe() + "]";
  return f;
}

BoundFamily BoundFamily::parse(std::string_view text) {
  const auto p = split_colon(text);
  BoundFamily f;
  const std::string& head = p[0];
  try {
    if (head == "alpha-const" && p.size() == 1) {
      f = alpha_exact(SpeedSchedule::constant());
    } else if (head == "alpha-geom" && p.size() == 2) {
      f = alpha_exact(SpeedSchedule::geometric(parse_rational(p[1])));
    } else if (head == "alpha-geomshift" && p.size() == 2) {
      f = alpha_exact(SpeedSchedule::geometric_shifted(parse_rational(p[1])));
    } else if (head == "alpha-geom-simple" && p.size() == 2) {
      f = alpha_simple(SpeedSchedule::geometric(parse_rational(p[1])));
    } else if (head == "alpha-geom-closed" && p.size() == 2) {
      f.kind_ = Kind::kAlphaGeometricClosed;
      f.q_ = parse_rational(p[1]);
      if (f.q_ <= 0 || f.q_ >= 1) throw InvalidArgument("q must lie in (0, 1)");
    } else if (head == "beta-const" && p.size() == 1) {
      f = beta(CostFunction::constant());
    } else if (head == "beta-exp" && (p.size() == 2 || p.size() == 3)) {
      f = beta(CostFunction::exponential(parse_rational(p[1]),
                                         p.size() == 3 ? parse_rational(p[2]) : Rational(1)));
    } else if (head == "thiele-lower") {
      f = thiele_lower(parse_weights(text, p));
    } else if (head == "thiele-upper") {
      f = thiele_upper(parse_weights(text, p));
    } else {
      throw InvalidArgument("unknown bound family '" + std::string(text) + "'");
    }
  } catch (const ParseError& e) {
    throw InvalidArgument("bad bound family '" + std::string(text) + "': " + e.what());
  }
  f.text_ = std::string(text);
  return f;
}

long BoundFamily::value(const Rational& gamma, long k) const {
  switch (kind_) {
    case Kind::kAlphaExact:
      return f_alpha_exact(alpha_, gamma, k);
    case Kind::kAlphaSimple:
      return f_alpha_simple(alpha_, gamma, k);
    case Kind::kAlphaGeometricClosed:
      return f_alpha_geometric_closed(q_, gamma, k);
    case Kind::kBeta:
      return f_beta(beta_, gamma, k);
    case Kind::kThieleLower:
      return phragmen::thiele_lower(lambda_, gamma, k);
    case Kind::kThieleUpper:
      return phragmen::thiele_upper(lambda_, gamma, k);
  }
  return 0;
}

double BoundFamily::smooth(const Rational& gamma, long k) const {
  const long v = value(gamma, k);
  if (gamma == 1) return static_cast<double>(v);
  switch (kind_) {
    case Kind::kAlphaExact:
    case Kind::kAlphaSimple:
    case Kind::kThieleLower:
    case Kind::kThieleUpper:
      return to_double(interpolate_levels(level_anchors(thresholds(k)), gamma, value(Rational(1), k)));
    case Kind::kAlphaGeometricClosed: {
      const double r = 1.0 / to_double(q_);
      const double x = to_double(gamma) * static_cast<double>(k + 1) * (r - 1.0) + 1.0;
      return std::clamp(std::log(x) / std::log(r) - 1.0, 0.0, static_cast<double>(k));
    }
    case Kind::kBeta: {
      double r = 0.0;
      if (auto exact = exact_price_ratio(beta_, gamma)) {
        r = to_double(*exact);
      } else {
        r = std::pow(to_double(beta_.base()), to_double(beta_.scale() * (1 - 2 * gamma)));
      }
      return std::clamp(beta_expression<double>(r, to_double(gamma), k), 0.0, static_cast<double>(k));
    }
  }
  return static_cast<double>(v);
}

std::vector<std::optional<Rational>> BoundFamily::thresholds(long k) const {
  if (k < 1) throw InvalidArgument("k must be positive");
  switch (kind_) {
    case Kind::kAlphaExact:
    case Kind::kAlphaSimple:
      check_alpha(alpha_, k);
      return alpha_thresholds(alpha_, k, kind_ == Kind::kAlphaSimple);
    case Kind::kThieleLower:
      check_lambda(lambda_, k);
      return thiele_lower_thresholds(lambda_, k);
    case Kind::kThieleUpper:
      check_lambda(lambda_, k);
      return thiele_upper_thresholds(lambda_, k);
    default:
      throw InvalidArgument("thresholds are defined for scan-based bound families only");
  }
}

BoundCurve emit_bound_curve(const BoundFamily& family, long k, const Rational& step) {
  if (step <= 0 || step >= 1) throw InvalidArgument("grid step must lie in (0, 1)");
  BoundCurve curve;
  curve.k = k;
  for (Rational g = step; g < 1; g += step) {
    curve.gamma.push_back(g);
    curve.value_over_k.push_back(Rational(family.value(g, k)) / k);
    curve.smooth_over_k.push_back(family.smooth(g, k) / static_cast<double>(k));
  }
  const double h = to_double(step);
  const std::size_t n = curve.gamma.size();
  curve.derivative.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 1) break;
    curve.derivative[i] = i + 1 < n ? (curve.smooth_over_k[i + 1] - curve.smooth_over_k[i]) / h
                                    : (curve.smooth_over_k[i] - curve.smooth_over_k[i - 1]) / h;
  }
  return curve;
}

std::string to_csv(const BoundCurve& curve) {
  std::ostringstream out;
  out << "gamma,value_over_k,derivative\n";
  char buf[128];
  for (std::size_t i = 0; i < curve.gamma.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g,%.9g,%.9g\n", to_double(curve.gamma[i]),
                  to_double(curve.value_over_k[i]), curve.derivative[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace phragmen
