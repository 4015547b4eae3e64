#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "infdelay/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "infdelay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = infdelay::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("infdelay_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"simulate", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({"simulate", "--n-modes", "zero"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const Result missing = run({"simulate", "--config", "/nonexistent/infdelay.cfg"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("/nonexistent/infdelay.cfg"), std::string::npos) << missing.err;
  EXPECT_EQ(run({"report", "/nonexistent/run"}).code, 2);
}

TEST(Cli, MonodromyReportsOracleMatches) {
  const Result r = run({"monodromy", "--n-modes", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["oracle_count"].get<int>(), 5);
  EXPECT_TRUE(j["sigma_gamma_empty"].get<bool>());
  bool mu1 = false;
  for (const auto& m : j["matches"]) {
    if (m["mode"].get<int>() == 1 && m["multiplier"].get<double>() > 0.7) mu1 = m["within_tolerance"].get<bool>();
  }
  EXPECT_TRUE(mu1);
}

TEST(Cli, SimulateWritesTrajectoryCsv) {
  const fs::path dir = fresh_dir("sim");
  const fs::path file = dir / "traj.csv";
  const Result r = run({"simulate", "--n-modes", "2", "--step-h", "0.01", "--output-stride", "100", "--out", file.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = infdelay::io::read_file(file.string());
  EXPECT_EQ(csv.rfind("t,u1,u2\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 421);
  fs::remove_all(dir);
}

TEST(Cli, VerifyAxiomsPasses) {
  const Result r = run({"verify-axioms", "--n-modes", "2", "--samples", "20"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["all_ok"].get<bool>());
  EXPECT_LE(j["delay_operator_bound"]["max_norm"].get<double>(), 1.0);
}

TEST(Cli, CircspecOnAConstant) {
  const fs::path dir = fresh_dir("circ");
  const Result r = run({"circspec", "--signal", "constant", "--output-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["flagged"].size(), 1u);
  EXPECT_EQ(j["flagged"][0][0].get<double>(), 1.0);
  EXPECT_EQ(j["periodicity"]["tail_sup"].get<double>(), 0.0);
  EXPECT_FALSE(j["c0"]["in_c0"].get<bool>());
  EXPECT_TRUE(fs::exists(dir / "indicator.csv"));
  EXPECT_EQ(run({"circspec", "--signal", "noise"}).code, 2);
  fs::remove_all(dir);
}

TEST(Cli, ConfigFileWithOverride) {
  const fs::path dir = fresh_dir("cfg");
  infdelay::io::write_file(dir / "run.cfg", "n_modes = 3\nstep_h = 0.01\n");
  const Result r = run({"simulate", "--config", (dir / "run.cfg").string(), "--n_modes", "2", "--output-stride", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("t,u1,u2\n", 0), 0u);
  fs::remove_all(dir);
}

TEST(Cli, ScenarioThenReport) {
  const fs::path dir = fresh_dir("scenario");
  const Result s = run({"scenario", "--output-dir", dir.string()});
  ASSERT_EQ(s.code, 0) << s.out << s.err;
  EXPECT_NE(s.out.find("asymptotic_periodic         true"), std::string::npos) << s.out;
  const Result r = run({"report", dir.string(), "--svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("all verdicts pass"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir / "residual.svg"));
  EXPECT_TRUE(fs::exists(dir / "eigenvalues.svg"));
  fs::remove_all(dir);
}
