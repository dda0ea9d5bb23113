#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include <boost/math/distributions/beta.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "phragmen/error.hpp"
#include "phragmen/euclidean.hpp"

namespace {

using namespace phragmen;

struct Moments {
  double mean = 0;
  double variance = 0;
};

Moments sample_moments(double a, double b, std::uint64_t seed, int draws = 100000) {
  Rng rng(seed);
  double sum = 0, sq = 0;
  for (int i = 0; i < draws; ++i) {
    const double x = sample_beta_scaled(a, b, rng);
    EXPECT_GE(x, -1.0);
    EXPECT_LE(x, 1.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  return {mean, sq / draws - mean * mean};
}

TEST(SampleBetaScaled, SymmetricShapeHasZeroMean) {
  EXPECT_NEAR(sample_moments(2, 2, 51).mean, 0.0, 0.01);
  EXPECT_NEAR(sample_moments(0.5, 0.5, 52).mean, 0.0, 0.01);
}

TEST(SampleBetaScaled, SkewedShapeMean) { EXPECT_NEAR(sample_moments(2, 4, 53).mean, -1.0 / 3.0, 0.01); }

TEST(SampleBetaScaled, ArcsineVariance) { EXPECT_NEAR(sample_moments(0.5, 0.5, 54).variance, 0.5, 0.02); }

TEST(SampleBetaScaled, DistributionMatchesBetaCdf) {
  // Kolmogorov-Smirnov distance against the analytic CDF for every shape used
  // in the simulations; critical value at alpha = 0.001 for 20000 draws is
  // about 0.0138.
  for (auto [a, b] : std::vector<std::pair<double, double>>{{2, 2}, {2, 4}, {0.5, 2}, {0.5, 0.5}}) {
    Rng rng(55);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = (sample_beta_scaled(a, b, rng) + 1) / 2;
    std::sort(xs.begin(), xs.end());
    boost::math::beta_distribution<double> dist(a, b);
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = boost::math::cdf(dist, std::clamp(xs[i], 0.0, 1.0));
      d = std::max({d, std::fabs(f - static_cast<double>(i) / xs.size()),
                    std::fabs(f - static_cast<double>(i + 1) / xs.size())});
    }
    EXPECT_LT(d, 0.0138) << a << "," << b;
  }
}

TEST(Rng, UniformIntStaysInRangeAndIsReproducible) {
  Rng a(56), b(56);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto x = a.uniform_int(3, 9);
    ASSERT_EQ(x, b.uniform_int(3, 9));
    ASSERT_GE(x, 3u);
    ASSERT_LE(x, 9u);
    ++counts[x - 3];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 1, 0));
  EXPECT_EQ(derive_seed(9, 2, 3), derive_seed(9, 2, 3));
  // Neighbouring master seeds must not reuse each other's run seeds.
  std::set<std::uint64_t> first, second;
  for (std::uint64_t r = 0; r < 64; ++r) {
    first.insert(derive_seed(99, 0, r));
    second.insert(derive_seed(100, 0, r));
  }
  std::vector<std::uint64_t> shared;
  std::set_intersection(first.begin(), first.end(), second.begin(), second.end(), std::back_inserter(shared));
  EXPECT_TRUE(shared.empty());
}

TEST(Rng, GammaMeanForSmallAndLargeShapes) {
  Rng rng(57);
  for (double shape : {0.5, 2.0, 7.5}) {
    double sum = 0;
    for (int i = 0; i < 50000; ++i) sum += rng.gamma(shape);
    EXPECT_NEAR(sum / 50000, shape, 0.03 * shape + 0.01) << shape;
  }
}

TEST(BuildEuclidean, DegenerateEqualPositionsApproveEverything) {
  const auto pe = euclidean_election_from_positions(std::vector<double>(10, 0.3), std::vector<double>(6, 0.3), 0.5, 3);
  for (const auto& b : pe.election.ballots()) EXPECT_EQ(b.size(), 6u);
  EXPECT_TRUE(is_candidate_interval(pe));
}

TEST(BuildEuclidean, ApprovalsFollowRadiusAndShrinkWithXi) {
  Rng rng(58);
  EuclideanConfig cfg;
  cfg.n = 50;
  cfg.m = 40;
  cfg.k = 5;
  for (int i = 0; i < 20; ++i) {
    const auto pe = build_euclidean_election(cfg, rng);
    for (VoterId v = 0; v < pe.election.num_voters(); ++v) {
      for (CandidateId c = 0; c < pe.election.num_candidates(); ++c) {
        const bool near = std::fabs(pe.voter_positions[v] - pe.candidate_positions[c]) <= cfg.xi;
        EXPECT_EQ(pe.election.approves(v, c), near);
      }
    }
    const auto smaller = euclidean_election_from_positions(pe.voter_positions, pe.candidate_positions, 0.1, 5);
    for (VoterId v = 0; v < pe.election.num_voters(); ++v) {
      for (CandidateId c : smaller.election.ballot(v)) EXPECT_TRUE(pe.election.approves(v, c));
    }
  }
}

TEST(BuildEuclidean, ConfigValidation) {
  EuclideanConfig cfg;
  cfg.xi = 0.6;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.xi = 0.2;
  cfg.beta_a = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  IssueModelConfig issues;
  issues.p = 0;
  EXPECT_THROW(issues.validate(), InvalidArgument);
}

TEST(CandidateInterval, GeneratedInstances) {
  Rng rng(59);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{2, 2}, {0.5, 0.5}}) {
    EuclideanConfig cfg;
    cfg.beta_a = a;
    cfg.beta_b = b;
    for (int i = 0; i < 50; ++i) EXPECT_TRUE(is_candidate_interval(build_euclidean_election(cfg, rng)));
  }
}

TEST(CandidateInterval, HandcraftedGap) {
  const Election e({"c1", "c2", "c3"}, {{0, 2}}, 1);
  EXPECT_FALSE(is_candidate_interval(PositionedElection{e, {0.0}, {-0.5, 0.0, 0.5}}));
  EXPECT_TRUE(is_candidate_interval(PositionedElection{e, {0.0}, {-0.5, 0.5, 0.0}}));
}

TEST(CandidateInterval, MatchesTripleOracleOnRandomProfiles) {
  Rng rng(60);
  int intervals = 0;
  for (int i = 0; i < 500; ++i) {
    const int m = static_cast<int>(rng.uniform_int(1, 7));
    const Election e = fixtures::random_small(rng, static_cast<int>(rng.uniform_int(1, 4)), m, 1);
    std::vector<double> pos(static_cast<std::size_t>(m));
    for (auto& x : pos) x = rng.uniform01() * 2 - 1;
    const bool got = is_candidate_interval(PositionedElection{e, std::vector<double>(e.num_voters(), 0.0), pos});
    EXPECT_EQ(got, oracle::interval_by_triples(pos, e)) << i;
    intervals += got;
  }
  EXPECT_GT(intervals, 50);
  EXPECT_LT(intervals, 450);
}

TEST(ApprovalSetSize, MatchesQuadrature) {
  const double p = oracle::approval_probability(2, 2, 0.2);
  Rng rng(61);
  double total = 0;
  for (int seed = 0; seed < 100; ++seed) {
    EuclideanConfig cfg;
    const auto pe = build_euclidean_election(cfg, rng);
    for (const auto& b : pe.election.ballots()) total += static_cast<double>(b.size());
  }
  const double mean = total / (100.0 * 200.0);
  EXPECT_NEAR(mean, 150 * p, 0.2 * 150 * p);
  // The generator is unbiased, so the much tighter check holds as well.
  EXPECT_NEAR(mean, 150 * p, 0.02 * 150 * p);
}

TEST(PEta, Examples) {
  for (double eta : {-1.0, -0.3, 0.0, 0.4, 1.0}) EXPECT_EQ(p_eta(eta, 0.0, 30, 120), 1.0);
  EXPECT_EQ(p_eta(-0.3, -0.1, 30, 120), 1.0);
  EXPECT_NEAR(p_eta(0.5, -0.5, 30, 120), 1.0 / 46, 1e-15);
  EXPECT_NEAR(p_eta(-0.3, -0.5, 30, 120), 1.0 / 5.2, 1e-15);
  EXPECT_EQ(p_eta(0.4, 0.4, 30, 120), 1.0);
}

TEST(PEta, MirrorSymmetryAndRange) {
  Rng rng(62);
  for (int i = 0; i < 10000; ++i) {
    const double eta = rng.uniform01() * 2 - 1;
    const double x = rng.uniform01() * 2 - 1;
    const double tau = 1 + rng.uniform01() * 50;
    const double delta = rng.uniform01() * 200;
    const double v = p_eta(eta, x, tau, delta);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v, p_eta(-eta, -x, tau, delta));
  }
}

TEST(IssueProfile, StatusQuoColumnIsAllOnes) {
  Rng rng(63);
  std::vector<double> positions;
  for (int i = 0; i < 300; ++i) positions.push_back(rng.uniform01() * 2 - 1);
  const auto profile = generate_issue_profile(positions, {0.0, 0.7}, IssueModelConfig{}, rng);
  ASSERT_EQ(profile.size(), 300u);
  for (const auto& row : profile) {
    ASSERT_EQ(row.size(), 2u);
    EXPECT_EQ(row[0], 1);
  }
}

TEST(IssueProfile, AcceptanceRateMatchesPEta) {
  Rng rng(64);
  const auto profile =
      generate_issue_profile(std::vector<double>(10000, 0.5), {-0.5}, IssueModelConfig{}, rng);
  double ones = 0;
  for (const auto& row : profile) ones += row[0];
  EXPECT_NEAR(ones / 10000, 1.0 / 46, 0.01);
}

TEST(IssueProfile, CloserCandidatesAgreeMore) {
  Rng rng(65);
  std::vector<double> positions = {0.2};
  for (int i = -10; i <= 10; ++i) positions.push_back(i / 10.0);
  std::vector<double> issues(20000);
  for (auto& x : issues) x = rng.uniform01() * 2 - 1;
  const auto profile = generate_issue_profile(positions, issues, IssueModelConfig{}, rng);
  std::size_t best = 1;
  double best_rate = -1;
  for (std::size_t c = 1; c < positions.size(); ++c) {
    double agree = 0;
    for (std::size_t j = 0; j < issues.size(); ++j) agree += profile[0][j] == profile[c][j];
    if (agree > best_rate) {
      best_rate = agree;
      best = c;
    }
  }
  EXPECT_NEAR(positions[best], 0.2, 0.1 + 1e-9);
}

TEST(CommitteeDecisions, MajorityRules) {
  BinaryMatrix odd(25, std::vector<std::uint8_t>{0, 1});
  for (int i = 0; i < 13; ++i) odd[static_cast<std::size_t>(i)][0] = 1;
  EXPECT_EQ(committee_decisions(odd), (std::vector<std::uint8_t>{1, 1}));
  EXPECT_EQ(committee_decisions({{1, 0}, {0, 0}}), (std::vector<std::uint8_t>{0, 0}));
  EXPECT_EQ(committee_decisions({{1, 0}, {1, 0}, {1, 0}}), (std::vector<std::uint8_t>{1, 0}));
}

TEST(DecisionSatisfaction, Definition) {
  const std::vector<std::uint8_t> a = {1, 0, 1, 1};
  EXPECT_EQ(decision_satisfaction(a, a), fixtures::q(1));
  EXPECT_EQ(decision_satisfaction(a, {0, 1, 0, 0}), fixtures::q(0));
  std::vector<std::uint8_t> voter(100, 1), decisions(100, 1);
  for (int i = 0; i < 32; ++i) decisions[static_cast<std::size_t>(i)] = 0;
  EXPECT_EQ(decision_satisfaction(voter, decisions), fixtures::q(68, 100));
  EXPECT_THROW(decision_satisfaction(a, {1}), InvalidArgument);
}

TEST(Pipeline, SeededGenerationIsReproducible) {
  EuclideanConfig cfg;
  Rng a(66), b(66);
  const auto x = build_euclidean_election(cfg, a);
  const auto y = build_euclidean_election(cfg, b);
  EXPECT_EQ(x.election, y.election);
  EXPECT_EQ(x.voter_positions, y.voter_positions);
  EXPECT_EQ(generate_issue_profile(x.voter_positions, {0.1, -0.4}, IssueModelConfig{}, a),
            generate_issue_profile(y.voter_positions, {0.1, -0.4}, IssueModelConfig{}, b));
}

}  // namespace
