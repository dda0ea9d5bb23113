#include "phragmen/phragmen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phragmen/error.hpp"

namespace phragmen {

void TieRule::check(std::size_t m) const {
  if (is_lex()) return;
  if (priority_.size() != m) throw InvalidArgument("tie order must list every candidate once");
}

TieRule TieRule::fixed_order(std::vector<CandidateId> priority) {
  TieRule rule;
  rule.rank_.assign(priority.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < priority.size(); ++i) {
    const CandidateId c = priority[i];
    if (c >= priority.size() || rule.rank_[c] != std::numeric_limits<std::size_t>::max()) {
      throw InvalidArgument("tie order is not a permutation of candidate ids");
    }
    rule.rank_[c] = i;
  }
  rule.priority_ = std::move(priority);
  return rule;
}

std::string to_string(NumericMode mode) { return mode == NumericMode::kExact ? "exact" : "float"; }

namespace {

template <typename Scalar>
Scalar speed_value(const SpeedSchedule& alpha, long i);
template <>
Rational speed_value<Rational>(const SpeedSchedule& alpha, long i) {
  return alpha.exact(i);
}
template <>
double speed_value<double>(const SpeedSchedule& alpha, long i) {
  return alpha.approx(i);
}

Rational price_value(const CostFunction& beta, const Rational& share, Rational* /*tag*/) {
  auto v = beta.exact(share);
  if (!v) {
    throw NumericModeError("price " + beta.describe() + " at x=" + to_string(share) +
                           " is irrational; use float mode");
  }
  return *v;
}

double price_value(const CostFunction& beta, const Rational& share, double* /*tag*/) {
  return beta.approx(share);
}

template <typename Scalar>
bool same_time(const Scalar& a, const Scalar& best, double eps) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    (void)eps;
    return a == best;
  } else {
    return a <= best + eps * std::max(std::abs(best), std::numeric_limits<double>::min());
  }
}

}  // namespace

template <typename Scalar>
PhragmenProcess<Scalar>::PhragmenProcess(const Election& e, SpeedSchedule alpha, CostFunction beta,
                                         TieRule tie, double eps)
    : election_(&e),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      tie_(std::move(tie)),
      eps_(eps),
      now_(0) {
  tie_.check(e.num_candidates());
  const std::size_t n = e.num_voters();
  const std::size_t m = e.num_candidates();
  balances_.assign(n, Scalar(0));
  paid_.assign(n, 0);
  elected_.assign(m, false);
  speeds_.assign(n, speed_for_level(0));
  prices_.assign(m, Scalar(0));
  // Prices depend only on the approver count; cache per count.
  std::vector<std::optional<Scalar>> by_count(n + 1);
  for (CandidateId c = 0; c < m; ++c) {
    const std::size_t count = e.approvers(c).size();
    if (count == 0) continue;
    if (!by_count[count]) {
      by_count[count] = price_value(beta_, make_rational(static_cast<long>(count), static_cast<long>(n)),
                                    static_cast<Scalar*>(nullptr));
    }
    prices_[c] = *by_count[count];
  }
}

template <typename Scalar>
const Scalar& PhragmenProcess<Scalar>::speed_for_level(int paid) {
  while (speed_levels_.size() <= static_cast<std::size_t>(paid)) {
    speed_levels_.push_back(speed_value<Scalar>(alpha_, static_cast<long>(speed_levels_.size()) + 1));
    if (!(speed_levels_.back() > 0)) throw InvalidArgument("speeds must be positive");
  }
  return speed_levels_[paid];
}

template <typename Scalar>
bool PhragmenProcess<Scalar>::finished() const noexcept {
  return committee_.size() >= static_cast<std::size_t>(election_->committee_size());
}

template <typename Scalar>
std::optional<Scalar> PhragmenProcess<Scalar>::next_purchase_time(CandidateId c) const {
  const auto voters = election_->approvers(c);
  if (voters.empty()) return std::nullopt;
  Scalar held(0);
  Scalar rate(0);
  for (VoterId v : voters) {
    held += balances_[v];
    rate += speeds_[v];
  }
  const Scalar& price = prices_[c];
  if (held >= price) return now_;
  Scalar t = now_ + (price - held) / rate;
  return t;
}

template <typename Scalar>
const PurchaseEvent<Scalar>& PhragmenProcess<Scalar>::step() {
  if (finished()) throw InvalidArgument("process already finished");
  const std::size_t m = election_->num_candidates();
  std::vector<std::optional<Scalar>> times(m);
  std::optional<Scalar> best;
  for (CandidateId c = 0; c < m; ++c) {
    if (elected_[c]) continue;
    times[c] = next_purchase_time(c);
    if (times[c] && (!best || *times[c] < *best)) best = times[c];
  }
  if (!best) {
    throw InsufficientCandidates("insufficient purchasable candidates: only " +
                                 std::to_string(committee_.size()) + " of k=" +
                                 std::to_string(election_->committee_size()) +
                                 " candidates have approvers");
  }
  std::optional<CandidateId> winner;
  for (CandidateId c = 0; c < m; ++c) {
    if (!times[c] || !same_time(*times[c], *best, eps_)) continue;
    if (!winner || tie_.prefers(c, *winner)) winner = c;
  }
  const CandidateId chosen = *winner;
  // Time advances to the chosen candidate's own purchase time so that its
  // payments sum to its price.
  const Scalar t = *times[chosen];
  const Scalar dt = t - now_;
  if (dt != Scalar(0)) {
    for (std::size_t v = 0; v < balances_.size(); ++v) balances_[v] += dt * speeds_[v];
  }
  now_ = t;

  PurchaseEvent<Scalar> ev;
  ev.time = t;
  ev.candidate = chosen;
  ev.cost = prices_[chosen];
  const auto voters = election_->approvers(chosen);
  ev.payers.assign(voters.begin(), voters.end());
  ev.payments.reserve(voters.size());
  for (VoterId v : voters) {
    ev.payments.push_back(balances_[v]);
    balances_[v] = Scalar(0);
    ++paid_[v];
    speeds_[v] = speed_for_level(paid_[v]);
  }
  elected_[chosen] = true;
  committee_.members.push_back(chosen);
  events_.push_back(std::move(ev));
  return events_.back();
}

template <typename Scalar>
BasicPhragmenTrace<Scalar> PhragmenProcess<Scalar>::run() {
  while (!finished()) step();
  return BasicPhragmenTrace<Scalar>{events_, committee_, balances_, paid_};
}

template class PhragmenProcess<Rational>;
template class PhragmenProcess<double>;

ExactTrace run_phragmen_exact(const Election& e, const SpeedSchedule& alpha,
                              const CostFunction& beta, const TieRule& tie) {
  return PhragmenProcess<Rational>(e, alpha, beta, tie).run();
}

FloatTrace run_phragmen_float(const Election& e, const SpeedSchedule& alpha,
                              const CostFunction& beta, const TieRule& tie, double eps) {
  return PhragmenProcess<double>(e, alpha, beta, tie, eps).run();
}

const Committee& PhragmenOutcome::committee() const {
  return std::visit([](const auto& t) -> const Committee& { return t.committee; }, trace);
}

PhragmenOutcome run_phragmen(const Election& e, const SpeedSchedule& alpha,
                             const CostFunction& beta, const TieRule& tie, ModeRequest mode,
                             double eps) {
  if (mode == ModeRequest::kFloat) {
    return PhragmenOutcome{NumericMode::kFloat, run_phragmen_float(e, alpha, beta, tie, eps)};
  }
  try {
    return PhragmenOutcome{NumericMode::kExact, run_phragmen_exact(e, alpha, beta, tie)};
  } catch (const NumericModeError&) {
    if (mode == ModeRequest::kExact) throw;
  }
  return PhragmenOutcome{NumericMode::kFloat, run_phragmen_float(e, alpha, beta, tie, eps)};
}

Election example3_instance() {
  std::vector<std::vector<CandidateId>> ballots(100);
  for (VoterId v = 0; v < 100; ++v) {
    if (v < 55) ballots[v].push_back(0);
    if (v < 30) {
      for (CandidateId c = 1; c <= 5; ++c) ballots[v].push_back(c);
    }
    if (v >= 50) {
      for (CandidateId c = 6; c <= 12; ++c) ballots[v].push_back(c);
    }
  }
  return Election(Election::default_labels(13), std::move(ballots), 6);
}

}  // namespace phragmen
