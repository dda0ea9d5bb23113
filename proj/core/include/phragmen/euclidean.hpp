#pragma once

#include <cstdint>
#include <vector>

#include "phragmen/election.hpp"
#include "phragmen/rational.hpp"
#include "phragmen/sampling.hpp"

namespace phragmen {

// One-dimensional Euclidean elections: voters and candidates sit in
// [-1, 1] and a voter approves every candidate within distance xi.
struct EuclideanConfig {
  double beta_a = 2.0;
  double beta_b = 2.0;
  int n = 200;
  int m = 150;
  int k = 25;
  double xi = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

// Voting-committee model: p issues, individuals accept an issue with
// probability p_eta(position, issue, tau, delta).
struct IssueModelConfig {
  int p = 100;
  double tau = 30.0;
  double delta = 120.0;

  void validate() const;
};

struct PositionedElection {
  Election election;
  std::vector<double> voter_positions;
  std::vector<double> candidate_positions;
};

// Positions i.i.d. from the scaled Beta(a, b), voters first, then
// candidates. Voters with nobody in range keep an empty ballot.
PositionedElection build_euclidean_election(const EuclideanConfig& cfg, Rng& rng);

// Radius approvals for given positions.
PositionedElection euclidean_election_from_positions(std::vector<double> voters,
                                                     std::vector<double> candidates, double xi,
                                                     int k);

// Consecutive-ones check: with candidates sorted by position (ties by id),
// every ballot is a contiguous run.
bool is_candidate_interval(const PositionedElection& pe);

// Probability that an individual at eta accepts an issue at x.
//   x*eta <= 0:          1 / ((delta|eta| + tau)|x| + 1)
//   |x| > |eta|, same side: 1 / (tau(1 - |eta|)|eta - x| + 1)
//   otherwise:           1
double p_eta(double eta, double x, double tau, double delta);

using BinaryMatrix = std::vector<std::vector<std::uint8_t>>;

// Entry (i, j) is 1 with probability p_eta(positions[i], issues[j]); draws
// run row by row.
BinaryMatrix generate_issue_profile(const std::vector<double>& positions,
                                    const std::vector<double>& issue_positions,
                                    const IssueModelConfig& cfg, Rng& rng);

// Per issue, 1 iff strictly more than half of the members hold 1.
std::vector<std::uint8_t> committee_decisions(const BinaryMatrix& member_vectors);

// Fraction of issues on which the voter agrees with the decisions.
Rational decision_satisfaction(const std::vector<std::uint8_t>& voter_vector,
                               const std::vector<std::uint8_t>& decisions);

}  // namespace phragmen
