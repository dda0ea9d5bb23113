#include "phragmen_cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phragmen/axioms.hpp"
#include "phragmen/bounds.hpp"
#include "phragmen/config.hpp"
#include "phragmen/error.hpp"
#include "phragmen/euclidean.hpp"
#include "phragmen/experiment.hpp"
#include "phragmen/phragmen.hpp"
#include "phragmen/random_instances.hpp"
#include "phragmen/rule_spec.hpp"
#include "phragmen/thiele.hpp"

namespace phragmen::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRuntime = 2;

// A flag value that does not parse.
class UsageError : public Error {
 public:
  using Error::Error;
};

template <typename F>
auto as_usage(const std::string& flag, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

long parse_long(const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("'" + text + "' is not an integer");
  }
  if (used != text.size()) throw InvalidArgument("'" + text + "' is not an integer");
  return v;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("'" + text + "' is not a number");
  }
  if (used != text.size()) throw InvalidArgument("'" + text + "' is not a number");
  return v;
}

TieRule parse_tie(const std::string& text, const Election& e) {
  if (text == "lex") return TieRule::lex();
  std::string body = text;
  if (body.rfind("order:", 0) == 0) body = body.substr(6);
  std::vector<CandidateId> order;
  for (const auto& item : split(body, ',')) {
    std::optional<CandidateId> id;
    for (CandidateId c = 0; c < e.num_candidates(); ++c) {
      if (e.label(c) == item) id = c;
    }
    if (!id) {
      const long one_based = parse_long(item);
      if (one_based < 1 || static_cast<std::size_t>(one_based) > e.num_candidates()) {
        throw InvalidArgument("unknown candidate '" + item + "'");
      }
      id = static_cast<CandidateId>(one_based - 1);
    }
    order.push_back(*id);
  }
  TieRule tie = TieRule::fixed_order(std::move(order));
  tie.check(e.num_candidates());
  return tie;
}

ModeRequest parse_mode(const std::string& text) {
  if (text == "exact") return ModeRequest::kExact;
  if (text == "float") return ModeRequest::kFloat;
  if (text == "auto") return ModeRequest::kAuto;
  throw InvalidArgument("mode must be exact, float or auto");
}

template <typename Scalar>
ojson scalar_json(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return to_string(x);
  } else {
    return x;
  }
}

ojson labels_json(const Election& e, const Committee& w) {
  ojson out = ojson::array();
  for (CandidateId c : w.members) out.push_back(e.label(c));
  return out;
}

template <typename Scalar>
void add_trace(ojson& doc, const Election& e, const BasicPhragmenTrace<Scalar>& trace) {
  ojson events = ojson::array();
  for (const auto& ev : trace.events) {
    ojson payers = ojson::array();
    ojson payments = ojson::array();
    for (std::size_t i = 0; i < ev.payers.size(); ++i) {
      payers.push_back(ev.payers[i] + 1);
      payments.push_back(scalar_json(ev.payments[i]));
    }
    events.push_back(ojson{{"t", scalar_json(ev.time)},
                           {"candidate", e.label(ev.candidate)},
                           {"payers", std::move(payers)},
                           {"payments", std::move(payments)},
                           {"cost", scalar_json(ev.cost)}});
  }
  doc["events"] = std::move(events);
  ojson balances = ojson::array();
  for (const auto& b : trace.final_balances) balances.push_back(scalar_json(b));
  doc["final_balances"] = std::move(balances);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed: " + path);
}

// ------------------------------------------------------------- commands

struct ValidateArgs {
  std::string file;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  try {
    load_election(a.file);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kRuntime;
  }
  out << "OK\n";
  return kOk;
}

struct RunArgs {
  std::string rule;
  std::string election;
  std::string tie = "lex";
  std::string mode = "auto";
  double eps = 1e-9;
  bool trace = false;
  std::uint64_t cap = 2'000'000;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  const RuleSpec rule = as_usage("--rule", [&] { return parse_rule(a.rule); });
  const ModeRequest mode = as_usage("--mode", [&] { return parse_mode(a.mode); });
  const Election e = load_election(a.election);
  const TieRule tie = as_usage("--tie", [&] { return parse_tie(a.tie, e); });

  ojson doc;
  doc["rule"] = rule.text;
  if (rule.family == RuleSpec::Family::kPhragmen) {
    const PhragmenOutcome outcome = run_phragmen(e, rule.alpha, rule.beta, tie, mode, a.eps);
    doc["mode"] = to_string(outcome.mode);
    doc["committee"] = labels_json(e, outcome.committee());
    if (a.trace) {
      std::visit([&](const auto& t) { add_trace(doc, e, t); }, outcome.trace);
    }
  } else {
    RuleRunOptions options;
    options.tie = tie;
    options.thiele.enumeration_cap = a.cap;
    const auto winners = winning_committees(rule, e, options);
    doc["mode"] = "exact";
    doc["committee"] = labels_json(e, winners.front());
    if (rule.family == RuleSpec::Family::kThiele) {
      ojson all = ojson::array();
      for (const auto& w : winners) all.push_back(labels_json(e, w));
      doc["committees"] = std::move(all);
    }
    doc["score"] = to_string(lambda_score(e, winners.front(), rule.lambda));
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

struct BoundsArgs {
  std::string family;
  long k = 0;
  std::string grid = "0.01";
  std::string out;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const BoundFamily family = as_usage("--family", [&] { return BoundFamily::parse(a.family); });
  const Rational step = as_usage("--grid", [&] {
    Rational g = parse_rational(a.grid);
    if (g <= 0 || g >= 1) throw InvalidArgument("grid step must lie in (0, 1)");
    return g;
  });
  if (a.k < 1) throw UsageError("--k must be positive");
  const std::string csv = to_csv(emit_bound_curve(family, a.k, step));
  if (a.out.empty()) {
    out << csv;
  } else {
    write_text(a.out, csv);
  }
  return kOk;
}

struct VerifyArgs {
  std::string check;
  std::string rule;
  std::string election;
  std::string random;
  std::string bound;
  int k_max = 0;
  bool allow_set_valued = false;
  std::size_t max_types = 20;
  int max_details = 10;
};

struct RandomSpec {
  int n, m, k;
  std::uint64_t seed;
  int count;
};

RandomSpec parse_random(const std::string& text) {
  const auto p = split(text, ',');
  if (p.size() != 5) throw InvalidArgument("expected n,m,k,seed,count");
  RandomSpec r{static_cast<int>(parse_long(p[0])), static_cast<int>(parse_long(p[1])),
               static_cast<int>(parse_long(p[2])), static_cast<std::uint64_t>(parse_long(p[3])),
               static_cast<int>(parse_long(p[4]))};
  if (r.n < 1 || r.m < 1 || r.k < 1 || r.k > r.m || r.count < 1) {
    throw InvalidArgument("need n, m, count >= 1 and 1 <= k <= m");
  }
  return r;
}

ojson election_json(const Election& e) { return ojson::parse(serialize_election(e, ElectionFormat::kJson)); }

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const RuleSpec rule = as_usage("--rule", [&] { return parse_rule(a.rule); });
  if (a.election.empty() == a.random.empty()) throw UsageError("give exactly one of --election and --random");
  std::optional<RandomSpec> random;
  if (!a.random.empty()) random = as_usage("--random", [&] { return parse_random(a.random); });

  Guarantee guarantee;
  if (a.check == "pjr") {
    if (!a.bound.empty()) {
      const BoundFamily family = as_usage("--bound", [&] { return BoundFamily::parse(a.bound); });
      guarantee = [family](const Rational& g, long k) { return family.value(g, k); };
    } else {
      guarantee = as_usage("--rule", [&] { return guarantee_for_rule(rule); });
    }
  }

  std::vector<Election> instances;
  if (random) {
    Rng rng(random->seed);
    for (int i = 0; i < random->count; ++i) {
      instances.push_back(a.check == "iuac" ? random_iuac_election(random->n, random->m, random->k, rng)
                                            : random_election(random->n, random->m, random->k, rng));
    }
  } else {
    instances.push_back(load_election(a.election));
  }

  RuleRunOptions options;
  long violations = 0;
  ojson details = ojson::array();
  auto record = [&](std::size_t index, const Election& e, ojson detail) {
    ++violations;
    if (static_cast<int>(details.size()) >= a.max_details) return;
    detail["instance"] = index;
    detail["election"] = election_json(e);
    details.push_back(std::move(detail));
  };

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Election& e = instances[i];
    if (a.check == "pjr") {
      for (const Committee& w : winning_committees(rule, e, options)) {
        PjrOptions popts;
        popts.max_ballot_types = a.max_types;
        if (auto v = verify_pjr_degree(e, w, guarantee, popts)) {
          ojson group = ojson::array();
          for (VoterId x : v->group.members) group.push_back(x + 1);
          record(i, e,
                 ojson{{"committee", labels_json(e, w)},
                       {"group", std::move(group)},
                       {"gamma", to_string(v->group.gamma)},
                       {"represented", v->represented},
                       {"common", v->common},
                       {"bound", v->bound}});
        }
      }
    } else if (a.check == "iuac") {
      const IuacReport report = check_iuac(rule, e, options);
      if (!report.holds) {
        ojson with = ojson::array();
        ojson without = ojson::array();
        for (const auto& w : report.with_candidate) with.push_back(labels_json(e, w));
        for (const auto& w : report.without_candidate) without.push_back(labels_json(e, w));
        record(i, e,
               ojson{{"unanimous", e.label(report.unanimous)},
                     {"with_candidate", std::move(with)},
                     {"without_candidate_plus_c", std::move(without)}});
      }
    } else {
      const int k_max = a.k_max > 0 ? a.k_max : e.committee_size();
      const MonotonicityReport report =
          as_usage("--rule", [&] { return check_committee_monotonicity(rule, e, k_max, options, a.allow_set_valued); });
      if (!report.holds) {
        ojson smaller = ojson::array();
        ojson larger = ojson::array();
        for (const auto& w : report.smaller) smaller.push_back(labels_json(e, w));
        for (const auto& w : report.larger) larger.push_back(labels_json(e, w));
        record(i, e, ojson{{"k", report.k}, {"smaller", std::move(smaller)}, {"larger", std::move(larger)}});
      }
    }
  }

  ojson doc;
  doc["check"] = a.check;
  doc["rule"] = rule.text;
  doc["instances"] = instances.size();
  doc["violations"] = violations;
  doc["summary"] = std::to_string(violations) + (violations == 1 ? " violation" : " violations");
  doc["details"] = std::move(details);
  out << doc.dump(2) << '\n';
  return kOk;
}

struct GenArgs {
  std::string beta = "2,2";
  int n = 200;
  int m = 150;
  int k = 25;
  double xi = 0.2;
  std::uint64_t seed = 1;
  std::string out;
  std::string positions;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  EuclideanConfig cfg = as_usage("--beta", [&] {
    const auto p = split(a.beta, ',');
    if (p.size() != 2) throw InvalidArgument("expected a,b");
    return EuclideanConfig{parse_double(p[0]), parse_double(p[1]), a.n, a.m, a.k, a.xi, a.seed};
  });
  as_usage("config", [&] {
    cfg.validate();
    return 0;
  });
  Rng rng(cfg.seed);
  const PositionedElection pe = build_euclidean_election(cfg, rng);
  const std::string doc = serialize_election(pe.election, ElectionFormat::kJson);
  if (a.out.empty()) {
    out << doc;
  } else {
    write_text(a.out, doc);
  }
  if (!a.positions.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "kind,id,position\n";
    for (std::size_t v = 0; v < pe.voter_positions.size(); ++v) csv << "voter,v" << v + 1 << ',' << pe.voter_positions[v] << '\n';
    for (std::size_t c = 0; c < pe.candidate_positions.size(); ++c) {
      csv << "candidate," << pe.election.label(static_cast<CandidateId>(c)) << ',' << pe.candidate_positions[c] << '\n';
    }
    write_text(a.positions, csv.str());
  }
  return kOk;
}

struct SimulateArgs {
  std::string config;
  std::string out_dir = ".";
  int runs = 0;
  int workers = -1;
  std::optional<std::uint64_t> seed;
  bool raw = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  SimConfig cfg = as_usage("--config", [&] { return load_sim_config(a.config); });
  if (a.runs > 0) cfg.runs = a.runs;
  if (a.workers >= 0) cfg.workers = a.workers;
  if (a.seed) cfg.seed = *a.seed;
  as_usage("config", [&] {
    cfg.validate();
    return 0;
  });
  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  ExperimentOptions options;
  if (a.raw) options.raw_path = (dir / "raw.csv.gz").string();
  const RunSummary summary = run_experiment(cfg, options);
  write_text((dir / "summary.csv").string(), summary_csv(summary));
  write_text((dir / "boxplot.csv").string(), boxplot_csv(summary));
  out << "wrote " << (dir / "summary.csv").string() << " (" << summary.rows.size() << " rows)\n";
  for (const auto& e : summary.errors) {
    err << "scenario " << e.distribution << " xi=" << e.xi << " failed: " << e.message << '\n';
  }
  return summary.errors.empty() ? kOk : kRuntime;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phragmen and Thiele committee rules, PJR-degree bounds and Euclidean simulations",
               "phragmen-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "phragmen-lab 0.1.0");

  ValidateArgs validate;
  auto* c_validate = app.add_subcommand("validate", "Check an election file; prints OK or the first error");
  c_validate->add_option("file", validate.file, "Election file (JSON or line format)")->required();

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Run a committee rule on an election and print JSON");
  c_run->add_option("--rule", run.rule,
                    "classic | alpha:geom:Q | alpha:const | beta:exp:B[:C] | thiele:pav | seqthiele:pav | ...")
      ->required();
  c_run->add_option("--election", run.election, "Election file")->required();
  c_run->add_option("--tie", run.tie, "lex, or a priority list of labels / 1-based ids (order:c3,c1,...)")
      ->capture_default_str();
  c_run->add_option("--mode", run.mode, "exact | float | auto (exact, falling back to float)")
      ->capture_default_str();
  c_run->add_option("--eps", run.eps, "Relative tolerance for simultaneous purchases in float mode")
      ->capture_default_str();
  c_run->add_flag("--trace", run.trace, "Include purchase events and final balances");
  c_run->add_option("--cap", run.cap, "Enumeration cap for exact Thiele")->capture_default_str();

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand("bounds", "Emit a PJR-degree bound curve as CSV");
  c_bounds->add_option("--family", bounds.family,
                       "alpha-const | alpha-geom:Q | alpha-geomshift:Q | alpha-geom-simple:Q | "
                       "alpha-geom-closed:Q | beta-const | beta-exp:B[:C] | thiele-lower:W | thiele-upper:W "
                       "(W = pav, av or geom:Q)")
      ->required();
  c_bounds->add_option("--k", bounds.k, "Committee size")->required();
  c_bounds->add_option("--grid", bounds.grid, "Grid step in (0, 1)")->capture_default_str();
  c_bounds->add_option("--out", bounds.out, "Output CSV (stdout if omitted)");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check PJR degree, IUAC or committee monotonicity");
  c_verify->add_option("check", verify.check, "pjr | iuac | monotone")
      ->required()
      ->check(CLI::IsMember({"pjr", "iuac", "monotone"}));
  c_verify->add_option("--rule", verify.rule, "Rule specification")->required();
  c_verify->add_option("--election", verify.election, "Election file");
  c_verify->add_option("--random", verify.random,
                       "n,m,k,seed,count: random instances (iuac adds a unanimous candidate and one seat)");
  c_verify->add_option("--bound", verify.bound, "Bound family for pjr (default: the rule's own guarantee)");
  c_verify->add_option("--k-max", verify.k_max, "Largest committee size for monotone (default: k)");
  c_verify->add_flag("--allow-set-valued", verify.allow_set_valued,
                     "Let monotone accept exact Thiele rules (some winner must extend)");
  c_verify->add_option("--max-types", verify.max_types, "Cap on distinct ballots for pjr")->capture_default_str();
  c_verify->add_option("--max-details", verify.max_details, "Violations listed in the report")
      ->capture_default_str();

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a 1-D Euclidean election");
  c_gen->add_option("--beta", gen.beta, "Beta shape parameters a,b")->capture_default_str();
  c_gen->add_option("--n", gen.n, "Voters")->capture_default_str();
  c_gen->add_option("--m", gen.m, "Candidates")->capture_default_str();
  c_gen->add_option("--k", gen.k, "Committee size")->capture_default_str();
  c_gen->add_option("--xi", gen.xi, "Approval radius in (0, 0.5]")->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  c_gen->add_option("--out", gen.out, "Election JSON (stdout if omitted)");
  c_gen->add_option("--positions", gen.positions, "CSV of voter and candidate positions");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run the Euclidean experiments from a TOML or JSON config");
  c_sim->add_option("--config", sim.config, "Config file (.toml or .json)")->required();
  c_sim->add_option("--out-dir", sim.out_dir, "Directory for summary.csv and boxplot.csv")->capture_default_str();
  c_sim->add_option("--runs", sim.runs, "Override runs per scenario");
  c_sim->add_option("--workers", sim.workers, "Worker threads (0 = hardware threads)");
  c_sim->add_option("--seed", sim.seed, "Override the master seed");
  c_sim->add_flag("--raw", sim.raw, "Also write per-voter raw.csv.gz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_validate->parsed()) return cmd_validate(validate, out, err);
    if (c_run->parsed()) return cmd_run(run, out);
    if (c_bounds->parsed()) return cmd_bounds(bounds, out);
    if (c_verify->parsed()) return cmd_verify(verify, out);
    if (c_gen->parsed()) return cmd_gen(gen, out);
    if (c_sim->parsed()) return cmd_simulate(sim, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"phragmen-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace phragmen::cli
