#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phragmen/election.hpp"
#include "phragmen/rational.hpp"
#include "phragmen/schedules.hpp"
#include "phragmen/tie_rule.hpp"

namespace phragmen {

// Continuous-time purchase process shared by alpha-Phragmen (speeds vary
// with the number of paid purchases), beta-Phragmen (prices vary with the
// approval share) and the classic rule (both constant).
//
// Voters earn money continuously. A candidate becomes affordable once its
// approvers together hold beta(|approvers|/n). At the earliest such moment
// the tie-rule winner is bought, all its approvers hand over their whole
// balance, and each payer's speed index advances. The process stops after k
// purchases.

enum class NumericMode { kExact, kFloat };

std::string to_string(NumericMode mode);

template <typename Scalar>
struct PurchaseEvent {
  Scalar time;
  CandidateId candidate = 0;
  Scalar cost;
  std::vector<VoterId> payers;   // all approvers of `candidate`, ascending
  std::vector<Scalar> payments;  // payments[i] is what payers[i] paid
};

template <typename Scalar>
struct BasicPhragmenTrace {
  std::vector<PurchaseEvent<Scalar>> events;
  Committee committee;  // selection order
  std::vector<Scalar> final_balances;
  std::vector<int> purchases_paid;  // per voter
};

using ExactTrace = BasicPhragmenTrace<Rational>;
using FloatTrace = BasicPhragmenTrace<double>;

template <typename Scalar>
class PhragmenProcess {
 public:
  // eps is the relative tolerance under which two purchase times count as
  // simultaneous; it is ignored for exact scalars. Throws NumericModeError
  // when an exact process meets an irrational price.
  PhragmenProcess(const Election& e, SpeedSchedule alpha, CostFunction beta, TieRule tie,
                  double eps = 0.0);

  // Earliest time >= now() at which the approvers of c can afford it, or
  // nullopt when nobody approves c. Requires c not yet elected.
  std::optional<Scalar> next_purchase_time(CandidateId c) const;

  // Performs one purchase. Throws InsufficientCandidates when no unelected
  // candidate has an approver.
  const PurchaseEvent<Scalar>& step();

  // Runs to k purchases and returns the full trace.
  BasicPhragmenTrace<Scalar> run();

  bool finished() const noexcept;
  const Scalar& now() const noexcept { return now_; }
  const Scalar& balance(VoterId v) const { return balances_.at(v); }
  const Scalar& speed(VoterId v) const { return speeds_.at(v); }
  const Scalar& price(CandidateId c) const { return prices_.at(c); }
  bool elected(CandidateId c) const { return elected_.at(c); }
  const std::vector<PurchaseEvent<Scalar>>& events() const noexcept { return events_; }

 private:
  const Scalar& speed_for_level(int paid);

  const Election* election_;
  SpeedSchedule alpha_;
  CostFunction beta_;
  TieRule tie_;
  double eps_;

  Scalar now_;
  std::vector<Scalar> balances_;
  std::vector<Scalar> speeds_;
  std::vector<int> paid_;
  std::vector<Scalar> prices_;
  std::vector<bool> elected_;
  std::vector<Scalar> speed_levels_;
  std::vector<PurchaseEvent<Scalar>> events_;
  Committee committee_;
};

extern template class PhragmenProcess<Rational>;
extern template class PhragmenProcess<double>;

ExactTrace run_phragmen_exact(const Election& e, const SpeedSchedule& alpha,
                              const CostFunction& beta, const TieRule& tie = TieRule::lex());

FloatTrace run_phragmen_float(const Election& e, const SpeedSchedule& alpha,
                              const CostFunction& beta, const TieRule& tie = TieRule::lex(),
                              double eps = 1e-9);

// Result of run_phragmen: the committee plus the trace in whichever numeric
// field was used.
struct PhragmenOutcome {
  NumericMode mode = NumericMode::kExact;
  std::variant<ExactTrace, FloatTrace> trace;

  const Committee& committee() const;
};

enum class ModeRequest { kExact, kFloat, kAuto };

// kExact throws NumericModeError on irrational prices; kAuto falls back to
// float in that case and reports the mode it used.
PhragmenOutcome run_phragmen(const Election& e, const SpeedSchedule& alpha,
                             const CostFunction& beta, const TieRule& tie,
                             ModeRequest mode, double eps = 1e-9);

// 100 voters, 13 candidates, k = 6: v1..v55 approve c1, v1..v30 also
// approve c2..c6, v51..v100 approve c7..c13.
Election example3_instance();

}  // namespace phragmen
