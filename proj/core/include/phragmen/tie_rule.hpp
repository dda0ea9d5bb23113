#pragma once

#include <cstddef>
#include <vector>

#include "phragmen/election.hpp"

namespace phragmen {

// Resolves simultaneous candidates. lex: lowest id wins. fixed_order: the
// earliest entry of a priority permutation wins.
class TieRule {
 public:
  static TieRule lex() { return TieRule{}; }
  static TieRule fixed_order(std::vector<CandidateId> priority);

  bool is_lex() const noexcept { return rank_.empty(); }
  std::size_t rank(CandidateId c) const { return rank_.empty() ? c : rank_.at(c); }
  // True if a beats b.
  bool prefers(CandidateId a, CandidateId b) const { return rank(a) < rank(b); }

  // Validates the permutation against m candidates.
  void check(std::size_t m) const;

  const std::vector<CandidateId>& priority() const noexcept { return priority_; }

 private:
  std::vector<CandidateId> priority_;
  std::vector<std::size_t> rank_;
};

}  // namespace phragmen
