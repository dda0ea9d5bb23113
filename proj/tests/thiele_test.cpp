#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "phragmen/error.hpp"
#include "phragmen/thiele.hpp"

namespace {

using namespace phragmen;
using fixtures::q;

std::function<Rational(long)> weights_fn(const ThieleWeights& w) {
  return [w](long j) -> Rational { return w.exact(j); };
}

TEST(LambdaScore, Figure1) {
  const Election e = fixtures::figure1();
  const Committee w{fixtures::ids({1, 2, 4})};
  EXPECT_EQ(lambda_score(e, w, ThieleWeights::pav()), q(15, 2));
  EXPECT_EQ(lambda_score(e, w, ThieleWeights::constant()), q(9));
}

TEST(LambdaScore, DisjointCommitteeScoresZero) {
  const Election e({"a", "b", "c"}, {{0}, {0, 1}}, 1);
  EXPECT_EQ(lambda_score(e, Committee{{2}}, ThieleWeights::pav()), q(0));
}

TEST(ExactThiele, Figure1Pav) {
  const auto winners = exact_thiele(fixtures::figure1(), ThieleWeights::pav());
  ASSERT_EQ(winners.size(), 2u);
  EXPECT_EQ(winners[0].members, fixtures::ids({1, 2, 4}));
  EXPECT_EQ(winners[1].members, fixtures::ids({1, 2, 6}));
  EXPECT_EQ(lambda_score(fixtures::figure1(), winners[0], ThieleWeights::pav()), q(15, 2));
}

TEST(ExactThiele, FullCommittee) {
  const Election e({"a", "b", "c"}, {{0}, {1}}, 3);
  const auto winners = exact_thiele(e, ThieleWeights::pav());
  ASSERT_EQ(winners.size(), 1u);
  EXPECT_EQ(winners[0].members, (std::vector<CandidateId>{0, 1, 2}));
}

TEST(ExactThiele, CapExceeded) {
  std::vector<std::vector<CandidateId>> ballots(1, std::vector<CandidateId>{0});
  const Election e(Election::default_labels(30), ballots, 15);
  EXPECT_THROW(exact_thiele(e, ThieleWeights::pav()), CapExceeded);
  EXPECT_THROW(exact_thiele(fixtures::figure1(), ThieleWeights::pav(), ThieleOptions{.enumeration_cap = 10}),
               CapExceeded);
}

TEST(ExactThiele, MatchesExhaustiveOracleOnRandomInstances) {
  Rng rng(21);
  const std::vector<ThieleWeights> weights = {ThieleWeights::pav(), ThieleWeights::geometric(q(1, 2)),
                                              ThieleWeights::constant(),
                                              ThieleWeights::table({q(1), q(1, 3), q(1, 9)})};
  for (int i = 0; i < 50; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 10));
    const int m = static_cast<int>(rng.uniform_int(2, 8));
    const int k = static_cast<int>(rng.uniform_int(1, static_cast<std::uint64_t>(m)));
    Election e = fixtures::random_small(rng, n, m, k - 1 > 0 ? k - 1 : 1);
    if (i % 2 == 0) {
      // Add a unanimous candidate and grow k, like the IUAC setting.
      std::vector<std::vector<CandidateId>> ballots = e.ballots();
      for (auto& b : ballots) b.push_back(static_cast<CandidateId>(m));
      e = Election(Election::default_labels(static_cast<std::size_t>(m + 1)), ballots, std::min(k + 1, m + 1));
    }
    for (const auto& w : weights) {
      EXPECT_EQ(exact_thiele(e, w), oracle::exhaustive_thiele(e, weights_fn(w))) << w.describe() << " #" << i;
    }
  }
}

TEST(ExactThiele, AnonymityAndNeutrality) {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const Election e = fixtures::random_small(rng, 8, 7, 3);
    const auto base = exact_thiele(e, ThieleWeights::pav());
    const Rational best = lambda_score(e, base.front(), ThieleWeights::pav());

    std::vector<std::vector<CandidateId>> voters = e.ballots();
    std::reverse(voters.begin(), voters.end());
    const Election permuted(e.candidate_labels(), voters, e.committee_size());
    EXPECT_EQ(exact_thiele(permuted, ThieleWeights::pav()), base);

    // Relabel candidate c as m-1-c.
    const auto m = static_cast<CandidateId>(e.num_candidates());
    std::vector<std::vector<CandidateId>> relabeled;
    for (const auto& b : e.ballots()) {
      std::vector<CandidateId> nb;
      for (CandidateId c : b) nb.push_back(m - 1 - c);
      relabeled.push_back(nb);
    }
    const Election mirrored(e.candidate_labels(), relabeled, e.committee_size());
    auto mapped = exact_thiele(mirrored, ThieleWeights::pav());
    for (auto& w : mapped) {
      for (auto& c : w.members) c = m - 1 - c;
      w = w.canonical();
    }
    std::sort(mapped.begin(), mapped.end());
    EXPECT_EQ(mapped, base);
    EXPECT_EQ(lambda_score(mirrored, exact_thiele(mirrored, ThieleWeights::pav()).front(), ThieleWeights::pav()), best);
  }
}

TEST(SeqThiele, FirstRoundPicksApprovalMaximizer) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const Election e = fixtures::random_small(rng, 9, 6, 3);
    const Committee w = seq_thiele(e, ThieleWeights::pav());
    std::size_t best = 0;
    for (CandidateId c = 0; c < e.num_candidates(); ++c) best = std::max(best, e.approvers(c).size());
    EXPECT_EQ(e.approvers(w.members.front()).size(), best);
  }
}

TEST(SeqThiele, Figure1ScoreEqualsOptimum) {
  const Election e = fixtures::figure1();
  const Committee w = seq_thiele(e, ThieleWeights::pav());
  EXPECT_EQ(lambda_score(e, w, ThieleWeights::pav()), q(15, 2));
}

TEST(SeqThiele, NeverBeatsExactOptimum) {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const Election e = fixtures::random_small(rng, 8, 7, 3);
    for (const auto& w : {ThieleWeights::pav(), ThieleWeights::geometric(q(1, 2))}) {
      const Rational greedy = lambda_score(e, seq_thiele(e, w), w);
      const Rational best = lambda_score(e, exact_thiele(e, w).front(), w);
      EXPECT_LE(greedy, best);
    }
  }
}

TEST(SeqThiele, ApprovalVotingAgreesWithExactUpToTies) {
  Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    const Election e = fixtures::random_small(rng, 8, 7, 3);
    const Committee greedy = seq_thiele(e, ThieleWeights::constant()).canonical();
    const auto exact = exact_thiele(e, ThieleWeights::constant());
    EXPECT_NE(std::find(exact.begin(), exact.end(), greedy), exact.end());
  }
}

TEST(SeqThiele, PrefixPropertyAcrossK) {
  Rng rng(26);
  for (int i = 0; i < 30; ++i) {
    const Election e = fixtures::random_small(rng, 8, 7, 1);
    Committee previous;
    for (int k = 1; k <= 7; ++k) {
      const Committee w = seq_thiele(e.with_committee_size(k), ThieleWeights::pav());
      ASSERT_EQ(w.size(), static_cast<std::size_t>(k));
      EXPECT_TRUE(std::equal(previous.members.begin(), previous.members.end(), w.members.begin()));
      previous = w;
    }
  }
}

TEST(GeometricThiele, UnanimousCandidateExtendsOldWinners) {
  Rng rng(27);
  for (int i = 0; i < 40; ++i) {
    const Election e = fixtures::random_small(rng, 7, 6, 2);
    std::vector<std::vector<CandidateId>> ballots = e.ballots();
    for (auto& b : ballots) b.push_back(6);
    const Election extended(Election::default_labels(7), ballots, 3);
    for (const auto& w : {ThieleWeights::geometric(q(1, 2)), ThieleWeights::geometric(q(2, 3))}) {
      auto old_winners = exact_thiele(e, w);
      for (auto& c : old_winners) c.members.push_back(6);
      std::sort(old_winners.begin(), old_winners.end());
      EXPECT_EQ(exact_thiele(extended, w), old_winners);
    }
  }
}

TEST(ThieleWeights, Validity) {
  EXPECT_TRUE(ThieleWeights::pav().valid_up_to(50));
  EXPECT_TRUE(ThieleWeights::geometric(q(1, 2)).valid_up_to(50));
  EXPECT_TRUE(ThieleWeights::constant().valid_up_to(50));
  EXPECT_FALSE(ThieleWeights::table({q(1), q(1, 2), q(1, 2), q(0)}).valid_up_to(4));
  EXPECT_EQ(ThieleWeights::pav().exact(4), q(1, 4));
  EXPECT_EQ(ThieleWeights::table({q(1), q(1, 2)}).exact(3), q(0));
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(6, 3), 20u);
  EXPECT_EQ(binomial(30, 15), 155117520u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

}  // namespace
