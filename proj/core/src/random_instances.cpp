#include "phragmen/random_instances.hpp"

#include <algorithm>
#include <numeric>

#include "phragmen/error.hpp"

namespace phragmen {

namespace {

std::vector<std::vector<CandidateId>> draw_ballots(int n, int m, Rng& rng) {
  std::vector<std::vector<CandidateId>> ballots;
  std::vector<CandidateId> pool(static_cast<std::size_t>(m));
  for (int v = 0; v < n; ++v) {
    std::iota(pool.begin(), pool.end(), 0);
    const auto size = rng.uniform_int(1, static_cast<std::uint64_t>(m));
    // Partial Fisher-Yates.
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto j = rng.uniform_int(i, static_cast<std::uint64_t>(m - 1));
      std::swap(pool[i], pool[j]);
    }
    ballots.emplace_back(pool.begin(), pool.begin() + static_cast<long>(size));
  }
  return ballots;
}

int approved_count(const std::vector<std::vector<CandidateId>>& ballots, int m) {
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (const auto& b : ballots)
    for (CandidateId c : b) seen[c] = true;
  return static_cast<int>(std::count(seen.begin(), seen.end(), true));
}

bool has_unanimous(const std::vector<std::vector<CandidateId>>& ballots, int m) {
  std::vector<int> count(static_cast<std::size_t>(m), 0);
  for (const auto& b : ballots)
    for (CandidateId c : b) ++count[c];
  return std::any_of(count.begin(), count.end(),
                     [&](int x) { return x == static_cast<int>(ballots.size()); });
}

void check_shape(int n, int m, int k) {
  if (n < 1 || m < 1) throw InvalidArgument("random election needs n >= 1 and m >= 1");
  if (k < 1 || k > m) throw InvalidArgument("random election needs 1 <= k <= m");
}

}  // namespace

Election random_election(int n, int m, int k, Rng& rng) {
  check_shape(n, m, k);
  for (;;) {
    auto ballots = draw_ballots(n, m, rng);
    if (approved_count(ballots, m) >= k) {
      return Election(Election::default_labels(static_cast<std::size_t>(m)), std::move(ballots), k);
    }
  }
}

Election add_unanimous_candidate(const Election& e, CandidateId position) {
  const std::size_t m = e.num_candidates();
  if (position > m) throw InvalidArgument("insert position out of range");
  std::vector<std::vector<CandidateId>> ballots;
  for (const auto& b : e.ballots()) {
    std::vector<CandidateId> nb;
    for (CandidateId c : b) nb.push_back(c >= position ? c + 1 : c);
    nb.push_back(position);
    ballots.push_back(std::move(nb));
  }
  return Election(Election::default_labels(m + 1), std::move(ballots), e.committee_size() + 1,
                  Election::Options{.allow_empty_ballots = e.allows_empty_ballots()});
}

Election random_iuac_election(int n, int m, int k, Rng& rng) {
  check_shape(n, m, k);
  // A single voter or a single candidate forces a unanimous candidate.
  if (n < 2 || m < 2) throw InvalidArgument("IUAC instances need at least two voters and two candidates");
  for (;;) {
    auto ballots = draw_ballots(n, m, rng);
    if (has_unanimous(ballots, m) || approved_count(ballots, m) < k) continue;
    Election base(Election::default_labels(static_cast<std::size_t>(m)), std::move(ballots), k);
    const auto pos = static_cast<CandidateId>(rng.uniform_int(0, static_cast<std::uint64_t>(m)));
    return add_unanimous_candidate(base, pos);
  }
}

}  // namespace phragmen
