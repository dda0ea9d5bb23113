#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "phragmen_cli/cli.hpp"

namespace {

namespace fs = std::filesystem;
using phragmen::cli::cli_main;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PHRAGMEN_TEST_DATA_DIR) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("phragmen-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"run", "--election", data("figure1.json")}).code, 1);
  EXPECT_EQ(run({"run", "--rule", "classic", "--election", data("figure1.json"), "--bogus"}).code, 1);
  const Result bad_rule = run({"run", "--rule", "alpha:nope", "--election", data("figure1.json")});
  EXPECT_EQ(bad_rule.code, 1);
  EXPECT_NE(bad_rule.err.find("alpha:nope"), std::string::npos);
  EXPECT_EQ(run({"bounds", "--family", "beta-exp:0.1", "--k", "50", "--grid", "1.5"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
  const Result sub = run({"simulate", "--help"});
  EXPECT_EQ(sub.code, 0);
  EXPECT_NE(sub.out.find("--out-dir"), std::string::npos);
}

TEST(Cli, ValidateOkAndFirstError) {
  const Result ok = run({"validate", data("figure1.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "OK\n");
  TempDir tmp;
  const auto bad = tmp.write("bad.json", R"({"candidates":["a"],"k":1,"approvals":[[0],[]]})");
  const Result r = run({"validate", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE((r.out + r.err).find("approvals[1]: empty approval set"), std::string::npos);
  EXPECT_EQ(run({"validate", tmp.file("missing.json")}).code, 2);
}

TEST(Cli, RunExampleOneExactTrace) {
  const Result r = run({"run", "--rule", "alpha:geom:1/10", "--election", data("figure1.json"), "--mode", "exact", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["committee"], nlohmann::json({"c1", "c2", "c3"}));
  EXPECT_EQ(doc["mode"], "exact");
  ASSERT_EQ(doc["events"].size(), 3u);
  EXPECT_EQ(doc["events"][0]["t"], "1/4");
  EXPECT_EQ(doc["events"][1]["t"], "1/2");
  EXPECT_EQ(doc["events"][2]["t"], "1");
  EXPECT_EQ(doc["events"][0]["payers"], nlohmann::json({1, 2, 3, 4}));
}

TEST(Cli, RunThieleListsAllOptima) {
  const Result r = run({"run", "--rule", "thiele:pav", "--election", data("figure1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["committees"].size(), 2u);
  EXPECT_EQ(doc["score"], "15/2");
}

TEST(Cli, RunExactModeWithIrrationalPricesIsRuntimeError) {
  EXPECT_EQ(run({"run", "--rule", "beta:exp:0.9:100", "--election", data("figure1.json"), "--mode", "exact"}).code, 2);
  const Result r = run({"run", "--rule", "beta:exp:0.9:100", "--election", data("figure1.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["mode"], "float");
}

TEST(Cli, BoundsCurveHas99Rows) {
  const Result r = run({"bounds", "--family", "beta-exp:0.1", "--k", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("gamma,value_over_k,derivative\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 100);
  TempDir tmp;
  EXPECT_EQ(run({"bounds", "--family", "alpha-geom:0.5", "--k", "50", "--grid", "0.01", "--out", tmp.file("c.csv")}).code, 0);
  const std::string csv = slurp(tmp.file("c.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 100);
}

TEST(Cli, VerifyRandomClassicHasNoViolations) {
  const Result r = run({"verify", "pjr", "--rule", "classic", "--random", "8,6,3,42,100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0 violations"), std::string::npos);
}

TEST(Cli, VerifyReportsViolationsWithExitZero) {
  TempDir tmp;
  const auto file = tmp.write("e.json", R"({"candidates":["a","b","c"],"k":2,
      "approvals":[[0],[0],[0],[1,2],[1,2],[1,2]]})");
  // AV elects b and c; the a-voters, half of the electorate, get nothing.
  const Result r = run({"verify", "pjr", "--rule", "thiele:av", "--election", file, "--bound", "alpha-const"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("violation"), std::string::npos);
  EXPECT_EQ(r.out.find("0 violations"), std::string::npos);
}

TEST(Cli, VerifyIuacAndMonotone) {
  const Result iuac = run({"verify", "iuac", "--rule", "alpha:geom:0.5", "--random", "6,5,2,3,20"});
  EXPECT_EQ(iuac.code, 0) << iuac.err;
  EXPECT_NE(iuac.out.find("0 violations"), std::string::npos);
  const Result mono = run({"verify", "monotone", "--rule", "classic", "--election", data("figure1.json"), "--k-max", "5"});
  EXPECT_EQ(mono.code, 0) << mono.err;
  EXPECT_EQ(run({"verify", "monotone", "--rule", "thiele:pav", "--election", data("figure1.json")}).code, 1);
}

TEST(Cli, GenWritesElectionAndPositions) {
  TempDir tmp;
  const Result r = run({"gen", "--beta", "2,2", "--n", "30", "--m", "20", "--k", "4", "--seed", "5", "--out",
                        tmp.file("el.json"), "--positions", tmp.file("pos.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"validate", tmp.file("el.json")}).code, 0);
  const std::string pos = slurp(tmp.file("pos.csv"));
  EXPECT_EQ(pos.rfind("kind,id,position\n", 0), 0u);
  EXPECT_EQ(std::count(pos.begin(), pos.end(), '\n'), 51);
  EXPECT_EQ(run({"gen", "--beta", "2"}).code, 1);
  EXPECT_EQ(run({"gen", "--xi", "0.9"}).code, 1);
}

TEST(Cli, SimulateTable1LayoutAndDeterminism) {
  TempDir tmp;
  const std::string config = std::string(PHRAGMEN_CONFIG_DIR) + "/table1.toml";
  const Result a = run({"simulate", "--config", config, "--runs", "3", "--out-dir", tmp.file("a"), "--workers", "1"});
  ASSERT_EQ(a.code, 0) << a.err;
  const std::string summary = slurp(tmp.file("a") + "/summary.csv");
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 13);
  EXPECT_EQ(summary.substr(0, summary.find('\n')), "distribution,xi,rule,reps_avg,reps_std,decisions_avg,decisions_std");
  EXPECT_TRUE(fs::exists(tmp.file("a") + "/boxplot.csv"));
  const Result b = run({"simulate", "--config", config, "--runs", "3", "--out-dir", tmp.file("b"), "--workers", "8", "--raw"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(tmp.file("b") + "/summary.csv"), summary);
  EXPECT_TRUE(fs::exists(tmp.file("b") + "/raw.csv.gz"));
}

TEST(Cli, SimulateBadConfigIsUsageError) {
  TempDir tmp;
  EXPECT_EQ(run({"simulate", "--config", tmp.write("c.toml", "nonsense = 3\n"), "--out-dir", tmp.file("o")}).code, 1);
  EXPECT_EQ(run({"simulate", "--config", tmp.write("d.toml", "runs = 0\n"), "--out-dir", tmp.file("o")}).code, 1);
  EXPECT_EQ(run({"simulate", "--config", std::string(PHRAGMEN_CONFIG_DIR) + "/smoke.json", "--out-dir", tmp.file("s")}).code, 0);
}

}  // namespace
