#pragma once

#include <string>
#include <vector>

#include "phragmen/election.hpp"
#include "phragmen/rational.hpp"
#include "phragmen/sampling.hpp"

namespace fixtures {

using phragmen::CandidateId;
using phragmen::Election;
using phragmen::Rational;

// Seven voters, six candidates, k = 3.
//   v1, v2: c1 c4 c6   v3: c1 c4   v4: c1 c5 c6   v5: c2 c5   v6: c2   v7: c3
inline Election figure1(int k = 3) {
  return Election(Election::default_labels(6), {{0, 3, 5}, {0, 3, 5}, {0, 3}, {0, 4, 5}, {1, 4}, {1}, {2}}, k);
}

inline const char* figure1_json() {
  return R"({"candidates": ["c1","c2","c3","c4","c5","c6"], "k": 3,
             "approvals": [[0,3,5],[0,3,5],[0,3],[0,4,5],[1,4],[1],[2]]})";
}

inline Rational q(long num, long den = 1) { return phragmen::make_rational(num, den); }

inline std::vector<CandidateId> ids(std::initializer_list<int> one_based) {
  std::vector<CandidateId> out;
  for (int c : one_based) out.push_back(static_cast<CandidateId>(c - 1));
  return out;
}

// Small random election with every ballot nonempty; sizes of the ballots
// are uniform in [1, m] like the library generator, but drawn through an
// independent path (bitmasks) so tests do not depend on it.
inline Election random_small(phragmen::Rng& rng, int n, int m, int k) {
  for (;;) {
    std::vector<std::vector<CandidateId>> ballots;
    std::vector<bool> approved(static_cast<std::size_t>(m), false);
    for (int v = 0; v < n; ++v) {
      std::uint64_t mask = 0;
      while (mask == 0) mask = rng.uniform_int(1, (std::uint64_t{1} << m) - 1);
      std::vector<CandidateId> b;
      for (int c = 0; c < m; ++c) {
        if (mask >> c & 1) {
          b.push_back(static_cast<CandidateId>(c));
          approved[static_cast<std::size_t>(c)] = true;
        }
      }
      ballots.push_back(std::move(b));
    }
    int count = 0;
    for (bool x : approved) count += x;
    if (count >= k) return Election(Election::default_labels(static_cast<std::size_t>(m)), std::move(ballots), k);
  }
}

}  // namespace fixtures
