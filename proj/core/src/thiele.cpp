#include "phragmen/thiele.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

#include "phragmen/error.hpp"

namespace phragmen {

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  __extension__ using Wide = unsigned __int128;
  Wide acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (m - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

Rational lambda_score(const Election& e, const Committee& w, const ThieleWeights& lambda) {
  std::vector<Rational> prefix(w.size() + 1, Rational(0));
  for (std::size_t j = 1; j <= w.size(); ++j) prefix[j] = prefix[j - 1] + lambda.exact(static_cast<long>(j));
  Rational total = 0;
  for (VoterId v = 0; v < e.num_voters(); ++v) total += prefix[representation_count(e, w, v)];
  return total;
}

namespace {

// Identical ballots are merged into weighted types.
struct TypedProfile {
  std::vector<long> weight;                      // voters per type
  std::vector<std::vector<std::size_t>> types_of;  // candidate -> types approving it
  std::vector<long> approval_weight;             // candidate -> #approvers
};

TypedProfile compress(const Election& e) {
  TypedProfile p;
  std::map<std::vector<CandidateId>, std::size_t> index;
  std::vector<std::vector<CandidateId>> ballots;
  for (const auto& b : e.ballots()) {
    auto [it, inserted] = index.try_emplace(b, p.weight.size());
    if (inserted) {
      p.weight.push_back(0);
      ballots.push_back(b);
    }
    ++p.weight[it->second];
  }
  p.types_of.assign(e.num_candidates(), {});
  p.approval_weight.assign(e.num_candidates(), 0);
  for (std::size_t t = 0; t < ballots.size(); ++t) {
    for (CandidateId c : ballots[t]) {
      p.types_of[c].push_back(t);
      p.approval_weight[c] += p.weight[t];
    }
  }
  return p;
}

class ExactSearch {
 public:
  ExactSearch(const Election& e, const ThieleWeights& lambda)
      : m_(e.num_candidates()), k_(static_cast<std::size_t>(e.committee_size())), profile_(compress(e)) {
    weights_.resize(k_ + 1);
    for (std::size_t j = 1; j <= k_; ++j) weights_[j] = lambda.exact(static_cast<long>(j));
    prune_ = lambda.valid_up_to(static_cast<long>(k_));
    lambda1_ = to_double(weights_.size() > 1 ? weights_[1] : Rational(0));
    // best_tail_[i][r]: sum of the r largest approval weights among
    // candidates i..m-1, an upper bound on r more marginal gains.
    best_tail_.assign(m_ + 1, std::vector<double>(k_ + 1, 0.0));
    for (std::size_t i = 0; i < m_; ++i) {
      std::vector<long> w(profile_.approval_weight.begin() + static_cast<long>(i),
                          profile_.approval_weight.end());
      std::sort(w.begin(), w.end(), std::greater<>());
      for (std::size_t r = 1; r <= k_; ++r) {
        best_tail_[i][r] = best_tail_[i][r - 1] + (r <= w.size() ? lambda1_ * static_cast<double>(w[r - 1]) : 0.0);
      }
    }
    counts_.assign(profile_.weight.size(), 0);
  }

  std::vector<Committee> run() {
    chosen_.clear();
    dfs(0, Rational(0), 0.0);
    return winners_;
  }

 private:
  void dfs(std::size_t next, const Rational& score, double score_approx) {
    const std::size_t slots = k_ - chosen_.size();
    if (slots == 0) {
      if (!best_ || score > *best_) {
        best_ = score;
        best_approx_ = to_double(score);
        winners_.clear();
      }
      if (score == *best_) winners_.push_back(Committee{chosen_});
      return;
    }
    if (m_ - next < slots) return;
    if (prune_ && best_) {
      const double bound = score_approx + best_tail_[next][slots];
      if (bound < best_approx_ - 1e-9 * std::max(1.0, best_approx_)) return;
    }
    for (std::size_t c = next; c + slots <= m_; ++c) {
      Rational gain = 0;
      for (std::size_t t : profile_.types_of[c]) gain += profile_.weight[t] * weights_[counts_[t] + 1];
      for (std::size_t t : profile_.types_of[c]) ++counts_[t];
      chosen_.push_back(static_cast<CandidateId>(c));
      dfs(c + 1, score + gain, score_approx + to_double(gain));
      chosen_.pop_back();
      for (std::size_t t : profile_.types_of[c]) --counts_[t];
    }
  }

  std::size_t m_;
  std::size_t k_;
  TypedProfile profile_;
  std::vector<Rational> weights_;
  bool prune_ = false;
  double lambda1_ = 0.0;
  std::vector<std::vector<double>> best_tail_;
  std::vector<long> counts_;
  std::vector<CandidateId> chosen_;
  std::optional<Rational> best_;
  double best_approx_ = 0.0;
  std::vector<Committee> winners_;
};

}  // namespace

std::vector<Committee> exact_thiele(const Election& e, const ThieleWeights& lambda,
                                    const ThieleOptions& options) {
  const auto total = binomial(e.num_candidates(), static_cast<std::uint64_t>(e.committee_size()));
  if (total > options.enumeration_cap) {
    throw CapExceeded("instance too large for exact enumeration: C(" +
                      std::to_string(e.num_candidates()) + "," + std::to_string(e.committee_size()) +
                      ") exceeds cap " + std::to_string(options.enumeration_cap));
  }
  return ExactSearch(e, lambda).run();
}

Committee seq_thiele(const Election& e, const ThieleWeights& lambda, const TieRule& tie) {
  tie.check(e.num_candidates());
  const auto k = static_cast<std::size_t>(e.committee_size());
  std::vector<Rational> weights(k + 1);
  for (std::size_t j = 1; j <= k; ++j) weights[j] = lambda.exact(static_cast<long>(j));
  std::vector<std::size_t> counts(e.num_voters(), 0);
  std::vector<bool> taken(e.num_candidates(), false);
  Committee w;
  while (w.size() < k) {
    std::optional<CandidateId> best;
    Rational best_gain;
    for (CandidateId c = 0; c < e.num_candidates(); ++c) {
      if (taken[c]) continue;
      Rational gain = 0;
      for (VoterId v : e.approvers(c)) gain += weights[counts[v] + 1];
      if (!best || gain > best_gain || (gain == best_gain && tie.prefers(c, *best))) {
        best = c;
        best_gain = gain;
      }
    }
    taken[*best] = true;
    w.members.push_back(*best);
    for (VoterId v : e.approvers(*best)) ++counts[v];
  }
  return w;
}

}  // namespace phragmen
