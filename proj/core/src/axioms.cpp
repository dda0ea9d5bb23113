#include "phragmen/axioms.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

#include "phragmen/bounds.hpp"
#include "phragmen/error.hpp"

namespace phragmen {

Guarantee guarantee_for_rule(const RuleSpec& rule) {
  switch (rule.family) {
    case RuleSpec::Family::kPhragmen: {
      const bool alpha_const = rule.alpha.kind() == SpeedSchedule::Kind::kConstant;
      const bool beta_const = rule.beta.kind() == CostFunction::Kind::kConstant;
      if (alpha_const && beta_const) {
        return [](const Rational& gamma, long k) {
          return std::clamp(floor_to_long(gamma * (k + 1)), 0L, k);
        };
      }
      if (beta_const) {
        return [alpha = rule.alpha](const Rational& gamma, long k) { return f_alpha_exact(alpha, gamma, k); };
      }
      if (alpha_const) {
        return [beta = rule.beta](const Rational& gamma, long k) { return f_beta(beta, gamma, k); };
      }
      throw InvalidArgument("no PJR guarantee known for combined alpha and beta rule '" + rule.text + "'");
    }
    case RuleSpec::Family::kThiele:
      return [lambda = rule.lambda](const Rational& gamma, long k) { return thiele_lower(lambda, gamma, k); };
    case RuleSpec::Family::kSeqThiele:
      break;
  }
  throw InvalidArgument("no PJR guarantee known for rule '" + rule.text + "'");
}

// ------------------------------------------------------------------ PJR

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  static Bits full(std::size_t n) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
    return r;
  }
  long count() const {
    long c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct BallotTypes {
  std::vector<Bits> approved;         // per type
  std::vector<Bits> represented;      // per type, approved ∩ W
  std::vector<long> count;            // voters per type
  std::vector<std::size_t> type_of;   // per voter
};

BallotTypes ballot_types(const Election& e, const Committee& w) {
  BallotTypes t;
  const std::size_t m = e.num_candidates();
  Bits wbits(m);
  for (CandidateId c : w.members) wbits.set(c);
  std::map<std::vector<CandidateId>, std::size_t> index;
  for (VoterId v = 0; v < e.num_voters(); ++v) {
    const auto b = e.ballot(v);
    std::vector<CandidateId> key(b.begin(), b.end());
    auto [it, inserted] = index.try_emplace(key, t.count.size());
    if (inserted) {
      Bits a(m);
      for (CandidateId c : key) a.set(c);
      t.represented.push_back(a & wbits);
      t.approved.push_back(std::move(a));
      t.count.push_back(0);
    }
    ++t.count[it->second];
    t.type_of.push_back(it->second);
  }
  return t;
}

// Lexicographically smallest set of `size` voters drawn from the types in
// `support` that includes at least one voter of every such type.
std::vector<VoterId> lex_min_group(const BallotTypes& t, const std::vector<bool>& support, long size) {
  const std::size_t n = t.type_of.size();
  std::vector<bool> covered(t.count.size(), false);
  long uncovered = std::count(support.begin(), support.end(), true);
  std::vector<VoterId> out;
  for (std::size_t v = 0; v < n && static_cast<long>(out.size()) < size; ++v) {
    const std::size_t ty = t.type_of[v];
    if (!support[ty]) continue;
    const long slots_after = size - static_cast<long>(out.size()) - 1;
    const long uncovered_after = uncovered - (covered[ty] ? 0 : 1);
    // Take v unless the slots left are all needed for uncovered types.
    if (slots_after >= uncovered_after) {
      out.push_back(static_cast<VoterId>(v));
      if (!covered[ty]) {
        covered[ty] = true;
        --uncovered;
      }
    }
  }
  return out;
}

struct Search {
  const BallotTypes& types;
  const std::vector<long>& bound;  // bound[s] = f(s/n, k), s = 0..n
  std::size_t m;

  std::optional<std::pair<long, std::vector<VoterId>>> best;
  std::optional<PjrViolation> best_violation;
  std::vector<bool> support;

  void consider(const Bits& common, const Bits& repr, long types_in, long voters_in) {
    const long common_size = common.count();
    const long represented = repr.count();
    const long limit = best ? std::min(best->first, voters_in) : voters_in;
    for (long s = types_in; s <= limit; ++s) {
      const long required = std::min(common_size, bound[static_cast<std::size_t>(s)]);
      if (required <= represented) continue;
      auto group = lex_min_group(types, support, s);
      if (!best || s < best->first || (s == best->first && group < best->second)) {
        PjrViolation v;
        v.group = VoterGroup::of(group, types.type_of.size());
        v.represented = represented;
        v.common = common_size;
        v.bound = bound[static_cast<std::size_t>(s)];
        best_violation = std::move(v);
        best = {s, std::move(group)};
      }
      return;
    }
  }

  void dfs(std::size_t next, const Bits& common, const Bits& repr, long types_in, long voters_in) {
    for (std::size_t ty = next; ty < types.count.size(); ++ty) {
      Bits c = types_in == 0 ? types.approved[ty] : (common & types.approved[ty]);
      if (c.count() == 0) continue;
      Bits r = types_in == 0 ? types.represented[ty] : (repr | types.represented[ty]);
      support[ty] = true;
      consider(c, r, types_in + 1, voters_in + types.count[ty]);
      dfs(ty + 1, c, r, types_in + 1, voters_in + types.count[ty]);
      support[ty] = false;
    }
  }
};

}  // namespace

std::optional<PjrViolation> verify_pjr_degree(const Election& e, const Committee& w, const Guarantee& f,
                                              const PjrOptions& options) {
  const BallotTypes types = ballot_types(e, w);
  if (types.count.size() > options.max_ballot_types) {
    throw CapExceeded("PJR verification over " + std::to_string(types.count.size()) +
                      " distinct ballots exceeds the cap of " + std::to_string(options.max_ballot_types));
  }
  const long n = static_cast<long>(e.num_voters());
  const long k = e.committee_size();
  std::vector<long> bound(static_cast<std::size_t>(n) + 1, 0);
  for (long s = 1; s <= n; ++s) bound[static_cast<std::size_t>(s)] = f(make_rational(s, n), k);
  Search search{types, bound, e.num_candidates(), std::nullopt, std::nullopt,
                std::vector<bool>(types.count.size(), false)};
  search.dfs(0, Bits(e.num_candidates()), Bits(e.num_candidates()), 0, 0);
  return search.best_violation;
}

std::optional<PjrViolation> check_group(const Election& e, const Committee& w,
                                        const std::vector<VoterId>& group, const Guarantee& f) {
  VoterGroup g = VoterGroup::of(group, e.num_voters());
  const std::size_t m = e.num_candidates();
  Bits wbits(m);
  for (CandidateId c : w.members) wbits.set(c);
  Bits common = Bits::full(m);
  Bits repr(m);
  for (VoterId v : g.members) {
    Bits a(m);
    for (CandidateId c : e.ballot(v)) a.set(c);
    common = common & a;
    repr = repr | (a & wbits);
  }
  PjrViolation out;
  out.represented = repr.count();
  out.common = common.count();
  out.bound = f(g.gamma, e.committee_size());
  out.group = std::move(g);
  if (out.represented >= out.required()) return std::nullopt;
  return out;
}

// ----------------------------------------------------------------- IUAC

namespace {

CandidateId unique_unanimous(const Election& e) {
  std::optional<CandidateId> found;
  for (CandidateId c = 0; c < e.num_candidates(); ++c) {
    if (e.approvers(c).size() != e.num_voters()) continue;
    if (found) throw InvalidArgument("more than one unanimously approved candidate");
    found = c;
  }
  if (!found) throw InvalidArgument("no unanimously approved candidate");
  return *found;
}

TieRule without_in_tie(const TieRule& tie, CandidateId removed) {
  if (tie.is_lex()) return tie;
  std::vector<CandidateId> order;
  for (CandidateId c : tie.priority()) {
    if (c == removed) continue;
    order.push_back(c > removed ? c - 1 : c);
  }
  return TieRule::fixed_order(std::move(order));
}

bool same_set(const Committee& a, const Committee& b) { return a.canonical() == b.canonical(); }

bool is_subset(const Committee& small, const Committee& large) {
  return std::all_of(small.members.begin(), small.members.end(),
                     [&](CandidateId c) { return large.contains(c); });
}

}  // namespace

IuacReport check_iuac(const RuleSpec& rule, const Election& e, const RuleRunOptions& options) {
  IuacReport report;
  const CandidateId c = unique_unanimous(e);
  if (e.committee_size() < 1) throw InvalidArgument("committee size must be positive");
  report.unanimous = c;
  report.with_candidate = winning_committees(rule, e, options);

  if (e.committee_size() > 1) {
    const Election reduced = e.without_candidate(c, e.committee_size() - 1);
    RuleRunOptions reduced_options = options;
    reduced_options.tie = without_in_tie(options.tie, c);
    for (Committee w : winning_committees(rule, reduced, reduced_options)) {
      for (auto& x : w.members) {
        if (x >= c) ++x;
      }
      report.without_candidate.push_back(std::move(w));
    }
  } else {
    report.without_candidate.push_back(Committee{});
  }

  for (const Committee& w : report.with_candidate) {
    const bool matched = std::any_of(report.without_candidate.begin(), report.without_candidate.end(),
                                     [&](const Committee& wp) {
                                       Committee joined = wp;
                                       joined.members.push_back(c);
                                       return same_set(joined, w);
                                     });
    if (!matched) {
      report.holds = false;
      report.offending = w;
      break;
    }
  }
  return report;
}

std::optional<Election> find_iuac_violation(const RuleSpec& rule, const IuacSearchCaps& caps,
                                            const RuleRunOptions& options) {
  for (int k = 2; k <= caps.max_k; ++k) {
    // Candidates: 0 unanimous, 1..k block C1, k+1..2k block C2.
    const std::size_t m = static_cast<std::size_t>(2 * k + 1);
    std::vector<CandidateId> block1, block2;
    for (int i = 0; i < k; ++i) {
      block1.push_back(static_cast<CandidateId>(1 + i));
      block2.push_back(static_cast<CandidateId>(1 + k + i));
    }
    for (int total = 2; total <= caps.max_voters; ++total) {
      for (int n1 = (total + 1) / 2; n1 < total; ++n1) {
        const int n2 = total - n1;
        std::vector<std::vector<CandidateId>> ballots;
        for (int v = 0; v < n1; ++v) {
          auto b = block1;
          b.insert(b.begin(), 0);
          ballots.push_back(std::move(b));
        }
        for (int v = 0; v < n2; ++v) {
          auto b = block2;
          b.insert(b.begin(), 0);
          ballots.push_back(std::move(b));
        }
        Election e(Election::default_labels(m), std::move(ballots), k);
        if (!check_iuac(rule, e, options).holds) return e;
      }
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------- small fractions

SmallFractionInstance small_fraction_instance(const Rational& q, const Rational& gamma,
                                              const Rational& epsilon, long scale) {
  if (q <= 0 || q >= 1) throw InvalidArgument("q must lie in (0, 1)");
  if (gamma <= 0 || gamma >= 1) throw InvalidArgument("gamma must lie in (0, 1)");
  if (epsilon <= 0) throw InvalidArgument("epsilon must be positive");
  if (scale < 1) throw InvalidArgument("scale must be positive");

  constexpr long kMaxK = 10000;
  long k = 0;
  long fk = 0;
  if (epsilon >= 1) {
    k = 1;
    fk = 1;
  } else {
    for (long cand = 1; cand <= kMaxK; ++cand) {
      const long f = floor_to_long(epsilon * cand);
      if (f < 1) continue;
      if ((1 - gamma) / (cand - f + 1) > gamma * pow_int(q, f)) {
        k = cand;
        fk = f;
        break;
      }
    }
    if (k == 0) throw InvalidArgument("no committee size up to 10000 satisfies the construction");
  }
  const long groups = std::max(1L, k - fk);
  const long den = gamma.get_den().get_si();
  const long num = gamma.get_num().get_si();
  const long n = den * groups * scale;
  const long cohesive = num * groups * scale;
  const long block = (den - num) * scale;
  if (n > 1'000'000) throw InvalidArgument("instance would need more than 10^6 voters");

  // Candidates: C' = 0..k-1, then one candidate per block.
  const std::size_t m = static_cast<std::size_t>(k + groups);
  std::vector<CandidateId> cprime(static_cast<std::size_t>(k));
  std::iota(cprime.begin(), cprime.end(), 0);
  std::vector<std::vector<CandidateId>> ballots;
  std::vector<VoterId> cohesive_voters;
  for (long v = 0; v < cohesive; ++v) {
    cohesive_voters.push_back(static_cast<VoterId>(v));
    ballots.push_back(cprime);
  }
  for (long g = 0; g < groups; ++g) {
    for (long v = 0; v < block; ++v) ballots.push_back({static_cast<CandidateId>(k + g)});
  }
  SmallFractionInstance out{Election(Election::default_labels(m), std::move(ballots), static_cast<int>(k)),
                            static_cast<int>(k), static_cast<int>(fk), std::move(cohesive_voters),
                            std::move(cprime)};
  return out;
}

// --------------------------------------------------------- monotonicity

MonotonicityReport check_committee_monotonicity(const RuleSpec& rule, const Election& e, int k_max,
                                                const RuleRunOptions& options, bool allow_set_valued) {
  if (!rule.sequential() && !allow_set_valued) {
    throw InvalidArgument("committee monotonicity check needs a sequential rule, got '" + rule.text + "'");
  }
  MonotonicityReport report;
  if (k_max < 2) return report;
  std::vector<Committee> prev = winning_committees(rule, e.with_committee_size(1), options);
  for (int k = 1; k < k_max; ++k) {
    std::vector<Committee> next = winning_committees(rule, e.with_committee_size(k + 1), options);
    const bool ok = std::any_of(prev.begin(), prev.end(), [&](const Committee& a) {
      return std::any_of(next.begin(), next.end(), [&](const Committee& b) { return is_subset(a, b); });
    });
    if (!ok) {
      report.holds = false;
      report.k = k;
      report.smaller = std::move(prev);
      report.larger = std::move(next);
      return report;
    }
    prev = std::move(next);
  }
  return report;
}

}  // namespace phragmen
