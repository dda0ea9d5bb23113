#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phragmen/rational.hpp"

namespace phragmen {

using CandidateId = std::uint32_t;
using VoterId = std::uint32_t;

// Approval-based election: candidates, voters with approval ballots and a
// target committee size. Ids are 0-based; human-facing output is 1-based.
//
// Ballots are stored sorted and deduplicated. Construction validates the
// invariants; an Election is immutable afterwards and safe to share across
// threads.
class Election {
 public:
  struct Options {
    // Generated Euclidean instances can leave a voter with nobody in range.
    // Such voters approve nothing, never pay and never score.
    bool allow_empty_ballots = false;
  };

  Election(std::vector<std::string> candidates,
           std::vector<std::vector<CandidateId>> approvals, int k);
  Election(std::vector<std::string> candidates,
           std::vector<std::vector<CandidateId>> approvals, int k, Options options);

  // Labels "c1".."cm".
  static std::vector<std::string> default_labels(std::size_t m);

  std::size_t num_candidates() const noexcept { return candidates_.size(); }
  std::size_t num_voters() const noexcept { return approvals_.size(); }
  int committee_size() const noexcept { return k_; }
  bool allows_empty_ballots() const noexcept { return options_.allow_empty_ballots; }

  const std::vector<std::string>& candidate_labels() const noexcept { return candidates_; }
  const std::string& label(CandidateId c) const { return candidates_.at(c); }

  std::span<const CandidateId> ballot(VoterId v) const { return approvals_.at(v); }
  const std::vector<std::vector<CandidateId>>& ballots() const noexcept { return approvals_; }

  // Voters approving c, ascending. May be empty.
  std::span<const VoterId> approvers(CandidateId c) const { return approvers_.at(c); }

  bool approves(VoterId v, CandidateId c) const;

  // Same candidates and ballots with a different committee size.
  Election with_committee_size(int k) const;

  // Removes candidate c from the candidate list and from every ballot; ids
  // above c shift down by one. Emptied ballots are allowed in the result.
  Election without_candidate(CandidateId c, int k) const;

  friend bool operator==(const Election& a, const Election& b) {
    return a.candidates_ == b.candidates_ && a.approvals_ == b.approvals_ && a.k_ == b.k_;
  }

 private:
  std::vector<std::string> candidates_;
  std::vector<std::vector<CandidateId>> approvals_;
  std::vector<std::vector<VoterId>> approvers_;
  int k_;
  Options options_;
};

// Elected candidates. Sequential rules keep selection order; set-valued
// rules use ascending order.
struct Committee {
  std::vector<CandidateId> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(CandidateId c) const;
  // Members in ascending order.
  Committee canonical() const;

  friend bool operator==(const Committee&, const Committee&) = default;
  friend auto operator<=>(const Committee&, const Committee&) = default;
};

// A set of voters together with its share of the electorate.
struct VoterGroup {
  std::vector<VoterId> members;  // ascending, nonempty
  Rational gamma;                // |members| / n

  static VoterGroup of(std::vector<VoterId> members, std::size_t num_voters);
};

enum class ElectionFormat { kJson, kLines };

Election parse_election(std::string_view text, ElectionFormat format);
std::string serialize_election(const Election& e, ElectionFormat format);

// Reads a file; ".json" selects JSON, anything else the line format unless
// the first non-space character is '{'.
Election load_election(const std::string& path);

// |W ∩ A(v)|.
int representation_count(const Election& e, const Committee& w, VoterId v);

}  // namespace phragmen
