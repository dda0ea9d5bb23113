#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "phragmen/election.hpp"
#include "phragmen/rational.hpp"
#include "phragmen/rule_spec.hpp"

namespace phragmen {

// A PJR-degree guarantee f(gamma, k); the verifier floors nothing itself, so
// the function must already return an integer.
using Guarantee = std::function<long(const Rational& gamma, long k)>;

// The guarantee proven for a rule: floor(gamma(k+1)) for classic Phragmen,
// f_alpha_exact for alpha rules, f_beta for beta rules and the Thiele lower
// bound for exact Thiele methods. Throws InvalidArgument for rules without
// a known guarantee (sequential Thiele, combined alpha+beta, increasing
// alpha).
Guarantee guarantee_for_rule(const RuleSpec& rule);

struct PjrViolation {
  VoterGroup group;
  long represented = 0;  // |union of A(v) ∩ W over the group|
  long common = 0;       // |intersection of A(v) over the group|
  long bound = 0;        // f(gamma, k)
  long required() const { return std::min(common, bound); }
};

struct PjrOptions {
  // Upper limit on distinct ballots; groups are enumerated over ballot
  // types, so the running time depends on this rather than on n.
  std::size_t max_ballot_types = 20;
};

// Checks |∪_{v∈S} A(v)∩W| >= min(|∩_{v∈S} A(v)|, f(|S|/n, k)) for every
// nonempty S ⊆ V, S = V included. Returns the smallest violating group,
// lexicographically first among equal sizes, or nullopt.
std::optional<PjrViolation> verify_pjr_degree(const Election& e, const Committee& w,
                                              const Guarantee& f, const PjrOptions& options = {});

// The same condition for one given group.
std::optional<PjrViolation> check_group(const Election& e, const Committee& w,
                                        const std::vector<VoterId>& group, const Guarantee& f);

struct IuacReport {
  bool holds = true;
  CandidateId unanimous = 0;
  std::vector<Committee> with_candidate;     // rule on e, size k
  std::vector<Committee> without_candidate;  // rule on e - c, size k-1, ids of e
  std::optional<Committee> offending;        // first W with no matching W'
};

// Requires exactly one candidate approved by every voter; throws
// InvalidArgument otherwise.
IuacReport check_iuac(const RuleSpec& rule, const Election& e, const RuleRunOptions& options = {});

struct IuacSearchCaps {
  int max_voters = 40;
  int max_k = 6;
};

// Two disjoint candidate blocks C1, C2 of size k approved by voter blocks
// V1, V2, plus one candidate approved by everybody. Scans k = 2..max_k and
// |V1| + |V2| <= max_voters and returns the first instance on which IUAC
// fails.
std::optional<Election> find_iuac_violation(const RuleSpec& rule, const IuacSearchCaps& caps = {},
                                            const RuleRunOptions& options = {});

struct SmallFractionInstance {
  Election election;
  int k = 0;
  int floor_eps_k = 0;                    // floor(epsilon * k)
  std::vector<VoterId> cohesive_voters;   // V'
  std::vector<CandidateId> cohesive_candidates;  // C', |C'| = k
};

// Cohesive group V' of share gamma approving k candidates C', and
// G = max(1, k - floor(eps k)) equal blocks sharing the remaining voters,
// each approving a single candidate of its own. k is the smallest value with
// floor(eps k) >= 1 and (1-gamma)/(k - floor(eps k) + 1) > gamma q^floor(eps k);
// for eps >= 1 it is 1. n = den(gamma) * G * scale.
SmallFractionInstance small_fraction_instance(const Rational& q, const Rational& gamma,
                                              const Rational& epsilon, long scale = 1);

struct MonotonicityReport {
  bool holds = true;
  int k = 0;  // first size whose winners are not contained in a larger winner
  std::vector<Committee> smaller;
  std::vector<Committee> larger;
};

// Winners for size k must be contained in winners for size k+1, for
// k = 1..k_max-1. Exact Thiele rules are set-valued and rejected unless
// allow_set_valued is set; then the check passes at k when some winner for
// k is a subset of some winner for k+1.
MonotonicityReport check_committee_monotonicity(const RuleSpec& rule, const Election& e, int k_max,
                                                const RuleRunOptions& options = {},
                                                bool allow_set_valued = false);

}  // namespace phragmen
