#pragma once

#include "phragmen/election.hpp"
#include "phragmen/sampling.hpp"

namespace phragmen {

// n voters, m candidates. Each ballot size is uniform on [1, m] and its
// members a uniform subset of that size. Profiles with fewer than k
// approved candidates are redrawn.
Election random_election(int n, int m, int k, Rng& rng);

// Inserts a candidate approved by every voter at id `position` (ids at or
// above it shift up) and sets the committee size to k + 1.
Election add_unanimous_candidate(const Election& e, CandidateId position);

// A random election without unanimous candidates (redrawn until none),
// extended by one unanimous candidate at a random position. The result has
// m + 1 candidates and committee size k + 1.
Election random_iuac_election(int n, int m, int k, Rng& rng);

}  // namespace phragmen
