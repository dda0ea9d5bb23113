#include "phragmen/experiment.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "phragmen/error.hpp"
#include "phragmen/phragmen.hpp"

namespace phragmen {

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string format_stat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

BetaShape BetaShape::of(double a, double b) {
  return BetaShape{a, b, format_number(a) + "_" + format_number(b)};
}

SimConfig SimConfig::defaults() {
  SimConfig cfg;
  cfg.distributions = {BetaShape::of(2, 2), BetaShape::of(2, 4), BetaShape::of(0.5, 2),
                       BetaShape::of(0.5, 0.5)};
  cfg.xi = {0.2};
  cfg.rules = {parse_rule("degr"), parse_rule("lin"), parse_rule("regr")};
  return cfg;
}

void SimConfig::validate() const {
  if (distributions.empty()) throw InvalidArgument("config: no distributions");
  if (xi.empty()) throw InvalidArgument("config: no xi values");
  if (rules.empty()) throw InvalidArgument("config: no rules");
  if (runs < 1) throw InvalidArgument("config: runs must be at least 1");
  if (workers < 0) throw InvalidArgument("config: workers must be non-negative");
  for (const auto& d : distributions) {
    EuclideanConfig probe{d.a, d.b, n, m, k, 0.2, 0};
    probe.validate();
  }
  for (double x : xi) {
    if (!(x > 0.0) || x > 0.5) throw InvalidArgument("config: xi must lie in (0, 0.5]");
  }
  issues.validate();
  for (std::size_t i = 0; i < group_cuts.size(); ++i) {
    if (!(group_cuts[i] > -1.0) || !(group_cuts[i] < 1.0)) {
      throw InvalidArgument("config: group boundaries must lie strictly inside (-1, 1)");
    }
    if (i > 0 && !(group_cuts[i] > group_cuts[i - 1])) {
      throw InvalidArgument("config: group boundaries must be strictly ascending");
    }
  }
}

std::string to_string(Measure measure) {
  return measure == Measure::kRepresentatives ? "representatives" : "decisions";
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

FiveNumber five_number_summary(std::vector<double> values) {
  FiveNumber out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  out.present = true;
  out.count = values.size();
  out.min = values.front();
  out.q1 = quantile_sorted(values, 0.25);
  out.median = quantile_sorted(values, 0.5);
  out.q3 = quantile_sorted(values, 0.75);
  out.max = values.back();
  return out;
}

std::size_t group_of(double position, const std::vector<double>& cuts) {
  std::size_t g = 0;
  for (double c : cuts) {
    if (c < position) {
      ++g;
    } else {
      if (c == position && c < 0.0) ++g;
      break;
    }
  }
  return g;
}

std::vector<FiveNumber> group_boxplot_stats(const std::vector<double>& positions,
                                            const std::vector<double>& values,
                                            const std::vector<double>& cuts) {
  if (positions.size() != values.size()) throw InvalidArgument("positions and values differ in length");
  std::vector<std::vector<double>> buckets(cuts.size() + 1);
  for (std::size_t i = 0; i < positions.size(); ++i) buckets[group_of(positions[i], cuts)].push_back(values[i]);
  std::vector<FiveNumber> out;
  for (auto& b : buckets) out.push_back(five_number_summary(std::move(b)));
  return out;
}

namespace {

std::vector<std::string> group_labels(const std::vector<double>& cuts) {
  std::vector<std::string> out;
  for (std::size_t g = 0; g <= cuts.size(); ++g) {
    std::string label;
    if (g == 0) {
      label = "[-1";
    } else {
      label = (cuts[g - 1] < 0.0 ? "[" : "(") + format_number(cuts[g - 1]);
    }
    label += ";";
    if (g == cuts.size()) {
      label += "1]";
    } else {
      label += format_number(cuts[g]) + (cuts[g] >= 0.0 ? "]" : ")");
    }
    out.push_back(label);
  }
  return out;
}

struct RuleResult {
  std::vector<double> representatives;
  std::vector<double> decisions;
};

struct RunResult {
  std::vector<double> positions;
  std::vector<RuleResult> rules;
  std::string error;
};

RunResult simulate_run(const SimConfig& cfg, const BetaShape& dist, double xi, std::uint64_t seed) {
  RunResult out;
  Rng rng(seed);
  EuclideanConfig ecfg{dist.a, dist.b, cfg.n, cfg.m, cfg.k, xi, seed};
  PositionedElection pe = build_euclidean_election(ecfg, rng);

  std::vector<double> issue_positions(static_cast<std::size_t>(cfg.issues.p));
  for (auto& x : issue_positions) x = sample_beta_scaled(dist.a, dist.b, rng);
  std::vector<double> individuals = pe.voter_positions;
  individuals.insert(individuals.end(), pe.candidate_positions.begin(), pe.candidate_positions.end());
  const BinaryMatrix prefs = generate_issue_profile(individuals, issue_positions, cfg.issues, rng);

  RuleRunOptions options;
  options.mode = ModeRequest::kFloat;
  options.eps = cfg.eps;
  const std::size_t n = pe.voter_positions.size();
  for (const RuleSpec& rule : cfg.rules) {
    const Committee w = winning_committees(rule, pe.election, options).front();
    BinaryMatrix members;
    for (CandidateId c : w.members) members.push_back(prefs[n + c]);
    const auto decisions = committee_decisions(members);
    RuleResult r;
    r.representatives.resize(n);
    r.decisions.resize(n);
    for (VoterId v = 0; v < n; ++v) {
      r.representatives[v] = representation_count(pe.election, w, v);
      r.decisions[v] = to_double(decision_satisfaction(prefs[v], decisions));
    }
    out.rules.push_back(std::move(r));
  }
  out.positions = std::move(pe.voter_positions);
  return out;
}

std::vector<RunResult> run_scenario(const SimConfig& cfg, std::size_t scenario, const BetaShape& dist,
                                    double xi) {
  const std::size_t runs = static_cast<std::size_t>(cfg.runs);
  std::vector<RunResult> results(runs);
  std::size_t workers = cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, runs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t run = next.fetch_add(1);
      if (run >= runs) return;
      try {
        results[run] = simulate_run(cfg, dist, xi, derive_seed(cfg.seed, scenario, run));
      } catch (const std::exception& e) {
        results[run].error = e.what();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

MeasureStats aggregate(const std::vector<RunResult>& results, std::size_t rule, Measure measure,
                       const std::vector<double>& cuts) {
  auto values_of = [&](const RunResult& r) -> const std::vector<double>& {
    return measure == Measure::kRepresentatives ? r.rules[rule].representatives : r.rules[rule].decisions;
  };
  long double sum = 0;
  std::size_t count = 0;
  for (const auto& r : results) {
    for (double x : values_of(r)) sum += x;
    count += values_of(r).size();
  }
  MeasureStats out;
  const long double mean = sum / static_cast<long double>(count);
  long double sq = 0;
  std::vector<std::vector<double>> buckets(cuts.size() + 1);
  for (const auto& r : results) {
    const auto& vals = values_of(r);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const long double d = vals[i] - mean;
      sq += d * d;
      buckets[group_of(r.positions[i], cuts)].push_back(vals[i]);
    }
  }
  out.avg = static_cast<double>(mean);
  out.std = static_cast<double>(std::sqrt(sq / static_cast<long double>(count)));
  for (auto& b : buckets) out.groups.push_back(five_number_summary(std::move(b)));
  return out;
}

class GzipWriter {
 public:
  explicit GzipWriter(const std::string& path) : file_(gzopen(path.c_str(), "wb")) {
    if (!file_) throw Error("cannot open " + path + " for writing");
  }
  ~GzipWriter() {
    if (file_) gzclose(file_);
  }
  GzipWriter(const GzipWriter&) = delete;
  GzipWriter& operator=(const GzipWriter&) = delete;

  void write(const std::string& text) {
    if (text.empty()) return;
    if (gzwrite(file_, text.data(), static_cast<unsigned>(text.size())) == 0) {
      throw Error("gzip write failed");
    }
  }

 private:
  gzFile file_;
};

void write_raw(GzipWriter& out, const SimConfig& cfg, const BetaShape& dist, double xi,
               const std::vector<RunResult>& results) {
  for (std::size_t run = 0; run < results.size(); ++run) {
    std::ostringstream block;
    const auto& r = results[run];
    for (std::size_t rule = 0; rule < r.rules.size(); ++rule) {
      for (std::size_t v = 0; v < r.positions.size(); ++v) {
        block << dist.label << ',' << format_number(xi) << ',' << cfg.rules[rule].text << ',' << run << ','
              << (v + 1) << ',' << format_number(r.positions[v]) << ','
              << format_number(r.rules[rule].representatives[v]) << ','
              << format_number(r.rules[rule].decisions[v]) << '\n';
      }
    }
    out.write(block.str());
  }
}

}  // namespace

RunSummary run_experiment(const SimConfig& cfg, const ExperimentOptions& options) {
  cfg.validate();
  RunSummary summary;
  summary.group_labels = group_labels(cfg.group_cuts);
  std::optional<GzipWriter> raw;
  if (!options.raw_path.empty()) {
    raw.emplace(options.raw_path);
    raw->write("distribution,xi,rule,run,voter,position,representatives,decisions\n");
  }
  std::size_t scenario = 0;
  for (const auto& dist : cfg.distributions) {
    for (double xi : cfg.xi) {
      const auto results = run_scenario(cfg, scenario++, dist, xi);
      const auto failed = std::find_if(results.begin(), results.end(),
                                       [](const RunResult& r) { return !r.error.empty(); });
      if (failed != results.end()) {
        summary.errors.push_back(ScenarioError{
            dist.label, xi,
            "run " + std::to_string(failed - results.begin()) + ": " + failed->error});
        continue;
      }
      for (std::size_t rule = 0; rule < cfg.rules.size(); ++rule) {
        ScenarioRuleSummary row;
        row.distribution = dist.label;
        row.xi = xi;
        row.rule = cfg.rules[rule].text;
        row.representatives = aggregate(results, rule, Measure::kRepresentatives, cfg.group_cuts);
        row.decisions = aggregate(results, rule, Measure::kDecisions, cfg.group_cuts);
        summary.rows.push_back(std::move(row));
      }
      if (raw) write_raw(*raw, cfg, dist, xi, results);
    }
  }
  return summary;
}

std::string summary_csv(const RunSummary& summary) {
  std::ostringstream out;
  out << "distribution,xi,rule,reps_avg,reps_std,decisions_avg,decisions_std\n";
  for (const auto& row : summary.rows) {
    out << row.distribution << ',' << format_number(row.xi) << ',' << row.rule << ','
        << format_stat(row.representatives.avg) << ',' << format_stat(row.representatives.std) << ','
        << format_stat(row.decisions.avg) << ',' << format_stat(row.decisions.std) << '\n';
  }
  return out.str();
}

std::string boxplot_csv(const RunSummary& summary) {
  std::ostringstream out;
  out << "distribution,xi,rule,measure,group,count,min,q1,median,q3,max\n";
  for (const auto& row : summary.rows) {
    for (Measure measure : {Measure::kRepresentatives, Measure::kDecisions}) {
      const auto& stats = measure == Measure::kRepresentatives ? row.representatives : row.decisions;
      for (std::size_t g = 0; g < stats.groups.size(); ++g) {
        const FiveNumber& f = stats.groups[g];
        out << row.distribution << ',' << format_number(row.xi) << ',' << row.rule << ','
            << to_string(measure) << ',' << summary.group_labels.at(g) << ',' << f.count;
        if (f.present) {
          out << ',' << format_stat(f.min) << ',' << format_stat(f.q1) << ',' << format_stat(f.median) << ','
              << format_stat(f.q3) << ',' << format_stat(f.max);
        } else {
          out << ",,,,,";
        }
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace phragmen
