#include "phragmen/election.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "phragmen/error.hpp"

namespace phragmen {

Election::Election(std::vector<std::string> candidates,
                   std::vector<std::vector<CandidateId>> approvals, int k)
    : Election(std::move(candidates), std::move(approvals), k, Options{}) {}

Election::Election(std::vector<std::string> candidates,
                   std::vector<std::vector<CandidateId>> approvals, int k, Options options)
    : candidates_(std::move(candidates)),
      approvals_(std::move(approvals)),
      k_(k),
      options_(options) {
  const std::size_t m = candidates_.size();
  if (m == 0) throw InvalidArgument("election has no candidates");
  if (approvals_.empty()) throw InvalidArgument("election has no voters");
  if (k_ < 1 || static_cast<std::size_t>(k_) > m) {
    throw InvalidArgument("committee size k=" + std::to_string(k_) + " out of range [1, " +
                          std::to_string(m) + "]");
  }
  std::set<std::string> seen;
  for (const auto& label : candidates_) {
    if (!seen.insert(label).second) throw InvalidArgument("duplicate candidate label '" + label + "'");
  }
  approvers_.assign(m, {});
  for (std::size_t v = 0; v < approvals_.size(); ++v) {
    auto& ballot = approvals_[v];
    std::sort(ballot.begin(), ballot.end());
    ballot.erase(std::unique(ballot.begin(), ballot.end()), ballot.end());
    if (ballot.empty() && !options_.allow_empty_ballots) {
      throw InvalidArgument("voter " + std::to_string(v + 1) + ": empty approval set");
    }
    for (CandidateId c : ballot) {
      if (c >= m) {
        throw InvalidArgument("voter " + std::to_string(v + 1) + ": candidate id " +
                              std::to_string(c + 1) + " out of range");
      }
      approvers_[c].push_back(static_cast<VoterId>(v));
    }
  }
}

std::vector<std::string> Election::default_labels(std::size_t m) {
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t c = 0; c < m; ++c) labels.push_back("c" + std::to_string(c + 1));
  return labels;
}

bool Election::approves(VoterId v, CandidateId c) const {
  const auto& b = approvals_.at(v);
  return std::binary_search(b.begin(), b.end(), c);
}

Election Election::with_committee_size(int k) const {
  return Election(candidates_, approvals_, k, options_);
}

Election Election::without_candidate(CandidateId c, int k) const {
  if (c >= num_candidates()) throw InvalidArgument("candidate id out of range");
  std::vector<std::string> labels = candidates_;
  labels.erase(labels.begin() + c);
  std::vector<std::vector<CandidateId>> ballots;
  ballots.reserve(approvals_.size());
  for (const auto& b : approvals_) {
    std::vector<CandidateId> nb;
    nb.reserve(b.size());
    for (CandidateId x : b) {
      if (x == c) continue;
      nb.push_back(x > c ? x - 1 : x);
    }
    ballots.push_back(std::move(nb));
  }
  return Election(std::move(labels), std::move(ballots), k, Options{.allow_empty_ballots = true});
}

bool Committee::contains(CandidateId c) const {
  return std::find(members.begin(), members.end(), c) != members.end();
}

Committee Committee::canonical() const {
  Committee out{members};
  std::sort(out.members.begin(), out.members.end());
  return out;
}

VoterGroup VoterGroup::of(std::vector<VoterId> members, std::size_t num_voters) {
  if (members.empty()) throw InvalidArgument("voter group must be nonempty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  VoterGroup g{std::move(members), Rational{}};
  g.gamma = make_rational(static_cast<long>(g.members.size()), static_cast<long>(num_voters));
  return g;
}

namespace {

using nlohmann::json;

Election parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("document must be an object", "$");
  for (const char* key : {"candidates", "k", "approvals"}) {
    if (!doc.contains(key)) throw ParseError("missing field", key);
  }
  const auto& cands = doc["candidates"];
  if (!cands.is_array()) throw ParseError("must be an array of strings", "candidates");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!cands[i].is_string()) {
      throw ParseError("must be a string", "candidates[" + std::to_string(i) + "]");
    }
    auto label = cands[i].get<std::string>();
    if (!seen.insert(label).second) {
      throw ParseError("duplicate candidate label '" + label + "'",
                       "candidates[" + std::to_string(i) + "]");
    }
    labels.push_back(std::move(label));
  }
  if (labels.empty()) throw ParseError("no candidates", "candidates");
  if (!doc["k"].is_number_integer()) throw ParseError("must be an integer", "k");
  const long k = doc["k"].get<long>();
  if (k < 1 || static_cast<std::size_t>(k) > labels.size()) {
    throw ParseError("k out of range [1, " + std::to_string(labels.size()) + "]", "k");
  }
  bool allow_empty = false;
  if (doc.contains("allow_empty")) {
    if (!doc["allow_empty"].is_boolean()) throw ParseError("must be a boolean", "allow_empty");
    allow_empty = doc["allow_empty"].get<bool>();
  }
  const auto& apps = doc["approvals"];
  if (!apps.is_array()) throw ParseError("must be an array", "approvals");
  if (apps.empty()) throw ParseError("no voters", "approvals");
  std::vector<std::vector<CandidateId>> ballots;
  for (std::size_t v = 0; v < apps.size(); ++v) {
    const std::string where = "approvals[" + std::to_string(v) + "]";
    if (!apps[v].is_array()) throw ParseError("must be an array", where);
    if (apps[v].empty() && !allow_empty) throw ParseError("empty approval set", where);
    std::vector<CandidateId> ballot;
    for (const auto& c : apps[v]) {
      if (!c.is_number_integer()) throw ParseError("candidate ids must be integers", where);
      const long id = c.get<long>();
      if (id < 0 || static_cast<std::size_t>(id) >= labels.size()) {
        throw ParseError("candidate id " + std::to_string(id) + " out of range", where);
      }
      ballot.push_back(static_cast<CandidateId>(id));
    }
    ballots.push_back(std::move(ballot));
  }
  return Election(std::move(labels), std::move(ballots), static_cast<int>(k),
                  Election::Options{.allow_empty_ballots = allow_empty});
}

Election parse_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    if (!std::getline(in, out)) return false;
    ++line_no;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  };
  // Header: skip leading blank lines.
  while (true) {
    if (!next_line(line)) throw ParseError("missing header 'm n k'", "line 1");
    if (line.find_first_not_of(" \t") != std::string::npos) break;
  }
  long m = 0, n = 0, k = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> m >> n >> k) || (hs >> extra)) {
      throw ParseError("header must be 'm n k'", "line " + std::to_string(line_no));
    }
  }
  const std::string header_where = "line " + std::to_string(line_no);
  if (m < 1) throw ParseError("m must be positive", header_where);
  if (n < 1) throw ParseError("n must be positive", header_where);
  if (k < 1 || k > m) throw ParseError("k out of range [1, " + std::to_string(m) + "]", header_where);
  std::vector<std::vector<CandidateId>> ballots;
  for (long v = 0; v < n; ++v) {
    if (!next_line(line)) {
      throw ParseError("expected " + std::to_string(n) + " voter lines, found " + std::to_string(v),
                       "line " + std::to_string(line_no + 1));
    }
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::vector<CandidateId> ballot;
    std::string tok;
    while (ls >> tok) {
      long id = 0;
      try {
        std::size_t used = 0;
        id = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad candidate index '" + tok + "'", where);
      }
      if (id < 1 || id > m) throw ParseError("candidate index " + tok + " out of range", where);
      ballot.push_back(static_cast<CandidateId>(id - 1));
    }
    if (ballot.empty()) throw ParseError("empty approval set", where);
    ballots.push_back(std::move(ballot));
  }
  while (next_line(line)) {
    if (line.find_first_not_of(" \t") != std::string::npos) {
      throw ParseError("unexpected content after voter lines", "line " + std::to_string(line_no));
    }
  }
  return Election(Election::default_labels(static_cast<std::size_t>(m)), std::move(ballots),
                  static_cast<int>(k));
}

}  // namespace

Election parse_election(std::string_view text, ElectionFormat format) {
  try {
    return format == ElectionFormat::kJson ? parse_json(text) : parse_lines(text);
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), "");
  }
}

std::string serialize_election(const Election& e, ElectionFormat format) {
  if (format == ElectionFormat::kJson) {
    json doc;
    doc["candidates"] = e.candidate_labels();
    doc["k"] = e.committee_size();
    json apps = json::array();
    bool any_empty = false;
    for (const auto& b : e.ballots()) {
      apps.push_back(b);
      any_empty = any_empty || b.empty();
    }
    doc["approvals"] = std::move(apps);
    if (any_empty) doc["allow_empty"] = true;
    return doc.dump() + "\n";
  }
  if (e.candidate_labels() != Election::default_labels(e.num_candidates())) {
    throw InvalidArgument("line format cannot carry custom candidate labels");
  }
  std::ostringstream out;
  out << e.num_candidates() << ' ' << e.num_voters() << ' ' << e.committee_size() << '\n';
  for (const auto& b : e.ballots()) {
    if (b.empty()) throw InvalidArgument("line format cannot carry empty ballots");
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << (b[i] + 1);
    out << '\n';
  }
  return out.str();
}

Election load_election(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool looks_json = (first != std::string::npos && text[first] == '{') ||
                          (path.size() >= 5 && path.substr(path.size() - 5) == ".json");
  return parse_election(text, looks_json ? ElectionFormat::kJson : ElectionFormat::kLines);
}

int representation_count(const Election& e, const Committee& w, VoterId v) {
  int count = 0;
  for (CandidateId c : w.members) count += e.approves(v, c) ? 1 : 0;
  return count;
}

}  // namespace phragmen
