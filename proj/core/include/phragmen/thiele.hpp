#pragma once

#include <cstdint>
#include <vector>

#include "phragmen/election.hpp"
#include "phragmen/rational.hpp"
#include "phragmen/schedules.hpp"
#include "phragmen/tie_rule.hpp"

namespace phragmen {

// sum over voters of lambda(1) + ... + lambda(|W ∩ A(v)|).
Rational lambda_score(const Election& e, const Committee& w, const ThieleWeights& lambda);

struct ThieleOptions {
  // Maximum number of size-k committees exact_thiele is willing to visit.
  std::uint64_t enumeration_cap = 2'000'000;
};

// Every committee of maximum lambda-score, each in ascending order, the list
// sorted lexicographically. Throws CapExceeded when C(m, k) exceeds the cap.
std::vector<Committee> exact_thiele(const Election& e, const ThieleWeights& lambda,
                                    const ThieleOptions& options = {});

// Greedy: each round adds the candidate with the largest marginal score.
// Members are returned in selection order.
Committee seq_thiele(const Election& e, const ThieleWeights& lambda,
                     const TieRule& tie = TieRule::lex());

// C(m, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t m, std::uint64_t k);

}  // namespace phragmen
