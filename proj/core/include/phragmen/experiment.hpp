#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phragmen/euclidean.hpp"
#include "phragmen/rule_spec.hpp"

namespace phragmen {

struct BetaShape {
  double a = 2.0;
  double b = 2.0;
  std::string label;  // "2_2", "0.5_2", ...

  static BetaShape of(double a, double b);
};

// Parameters of a batch of Euclidean simulations. Every (distribution, xi)
// pair is a scenario; every scenario runs `runs` independent elections and
// evaluates all rules on each of them.
struct SimConfig {
  std::vector<BetaShape> distributions;
  std::vector<double> xi;
  std::vector<RuleSpec> rules;
  int n = 200;
  int m = 150;
  int k = 25;
  int runs = 1000;
  IssueModelConfig issues;
  std::uint64_t seed = 1;
  // Interior cut points splitting [-1, 1] into voter groups, ascending. A
  // voter exactly on a cut joins the group closer to 0.
  std::vector<double> group_cuts = {-1.0 / 3.0, 1.0 / 3.0};
  // Worker threads; 0 means one per hardware thread.
  int workers = 0;
  double eps = 1e-9;

  // Four distributions of the published tables, xi = 0.2, rules degr, lin
  // and regr, n = 200, m = 150, k = 25, 1000 runs, p = 100, tau = 30,
  // delta = 120.
  static SimConfig defaults();

  void validate() const;
};

enum class Measure { kRepresentatives, kDecisions };
std::string to_string(Measure measure);

struct FiveNumber {
  bool present = false;
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Sample quantile with linear interpolation between order statistics
// (position (n-1)p, the usual "type 7" definition). `sorted` must be
// ascending and nonempty.
double quantile_sorted(const std::vector<double>& sorted, double p);

FiveNumber five_number_summary(std::vector<double> values);

// Group index of a position for the given cuts.
std::size_t group_of(double position, const std::vector<double>& cuts);

// Five-number summary per group; groups without members are not present.
std::vector<FiveNumber> group_boxplot_stats(const std::vector<double>& positions,
                                            const std::vector<double>& values,
                                            const std::vector<double>& cuts);

struct MeasureStats {
  double avg = 0;
  double std = 0;  // population std over all voters of all runs
  std::vector<FiveNumber> groups;
};

struct ScenarioRuleSummary {
  std::string distribution;
  double xi = 0;
  std::string rule;
  MeasureStats representatives;
  MeasureStats decisions;
};

struct ScenarioError {
  std::string distribution;
  double xi = 0;
  std::string message;
};

struct RunSummary {
  std::vector<ScenarioRuleSummary> rows;  // scenario order, then rule order
  std::vector<ScenarioError> errors;
  std::vector<std::string> group_labels;
};

struct ExperimentOptions {
  // Gzip-compressed per-voter CSV; empty disables it.
  std::string raw_path;
};

RunSummary run_experiment(const SimConfig& cfg, const ExperimentOptions& options = {});

// distribution,xi,rule,reps_avg,reps_std,decisions_avg,decisions_std
std::string summary_csv(const RunSummary& summary);
// distribution,xi,rule,measure,group,count,min,q1,median,q3,max
std::string boxplot_csv(const RunSummary& summary);

}  // namespace phragmen
