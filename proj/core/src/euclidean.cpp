#include "phragmen/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phragmen/error.hpp"

namespace phragmen {

void EuclideanConfig::validate() const {
  if (!(beta_a > 0.0) || !(beta_b > 0.0)) throw InvalidArgument("beta shapes must be positive");
  if (n < 1 || m < 1) throw InvalidArgument("n and m must be positive");
  if (k < 1 || k > m) throw InvalidArgument("k must lie in [1, m]");
  if (!(xi > 0.0) || xi > 0.5) throw InvalidArgument("xi must lie in (0, 0.5]");
}

void IssueModelConfig::validate() const {
  if (p < 1) throw InvalidArgument("issue count p must be positive");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
}

PositionedElection euclidean_election_from_positions(std::vector<double> voters,
                                                     std::vector<double> candidates, double xi,
                                                     int k) {
  std::vector<std::vector<CandidateId>> ballots(voters.size());
  for (std::size_t v = 0; v < voters.size(); ++v) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (std::fabs(voters[v] - candidates[c]) <= xi) ballots[v].push_back(static_cast<CandidateId>(c));
    }
  }
  Election e(Election::default_labels(candidates.size()), std::move(ballots), k,
             Election::Options{.allow_empty_ballots = true});
  return PositionedElection{std::move(e), std::move(voters), std::move(candidates)};
}

PositionedElection build_euclidean_election(const EuclideanConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<double> voters(static_cast<std::size_t>(cfg.n));
  std::vector<double> candidates(static_cast<std::size_t>(cfg.m));
  for (auto& x : voters) x = sample_beta_scaled(cfg.beta_a, cfg.beta_b, rng);
  for (auto& x : candidates) x = sample_beta_scaled(cfg.beta_a, cfg.beta_b, rng);
  return euclidean_election_from_positions(std::move(voters), std::move(candidates), cfg.xi, cfg.k);
}

bool is_candidate_interval(const PositionedElection& pe) {
  const std::size_t m = pe.election.num_candidates();
  if (pe.candidate_positions.size() != m) throw InvalidArgument("candidate positions do not match the election");
  std::vector<CandidateId> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](CandidateId a, CandidateId b) {
    return pe.candidate_positions[a] < pe.candidate_positions[b];
  });
  std::vector<std::size_t> rank(m);
  for (std::size_t i = 0; i < m; ++i) rank[order[i]] = i;
  for (const auto& ballot : pe.election.ballots()) {
    if (ballot.empty()) continue;
    std::size_t lo = m, hi = 0;
    for (CandidateId c : ballot) {
      lo = std::min(lo, rank[c]);
      hi = std::max(hi, rank[c]);
    }
    if (hi - lo + 1 != ballot.size()) return false;
  }
  return true;
}

double p_eta(double eta, double x, double tau, double delta) {
  if (x * eta <= 0.0) return 1.0 / ((delta * std::fabs(eta) + tau) * std::fabs(x) + 1.0);
  if (std::fabs(x) > std::fabs(eta)) return 1.0 / (tau * (1.0 - std::fabs(eta)) * std::fabs(eta - x) + 1.0);
  return 1.0;
}

BinaryMatrix generate_issue_profile(const std::vector<double>& positions,
                                    const std::vector<double>& issue_positions,
                                    const IssueModelConfig& cfg, Rng& rng) {
  cfg.validate();
  BinaryMatrix out(positions.size(), std::vector<std::uint8_t>(issue_positions.size(), 0));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < issue_positions.size(); ++j) {
      out[i][j] = rng.bernoulli(p_eta(positions[i], issue_positions[j], cfg.tau, cfg.delta)) ? 1 : 0;
    }
  }
  return out;
}

std::vector<std::uint8_t> committee_decisions(const BinaryMatrix& member_vectors) {
  if (member_vectors.empty()) throw InvalidArgument("committee has no members");
  const std::size_t p = member_vectors.front().size();
  std::vector<std::size_t> ones(p, 0);
  for (const auto& row : member_vectors) {
    if (row.size() != p) throw InvalidArgument("member vectors differ in length");
    for (std::size_t j = 0; j < p; ++j) ones[j] += row[j];
  }
  std::vector<std::uint8_t> out(p);
  const std::size_t k = member_vectors.size();
  for (std::size_t j = 0; j < p; ++j) out[j] = 2 * ones[j] > k ? 1 : 0;
  return out;
}

Rational decision_satisfaction(const std::vector<std::uint8_t>& voter_vector,
                               const std::vector<std::uint8_t>& decisions) {
  if (voter_vector.size() != decisions.size()) throw InvalidArgument("vector lengths differ");
  if (decisions.empty()) throw InvalidArgument("no issues");
  long agree = 0;
  for (std::size_t j = 0; j < decisions.size(); ++j) agree += voter_vector[j] == decisions[j];
  return make_rational(agree, static_cast<long>(decisions.size()));
}

}  // namespace phragmen
