#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/stats.hpp"

using namespace dynregret;
using namespace dynregret::cli;

namespace fs = std::filesystem;

namespace {

std::string config_path(const std::string& name) { return std::string(DYNREGRET_CONFIG_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dynregret_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_json(const fs::path& dir, const std::string& name, const nlohmann::json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump();
  return p;
}

Overrides out_to(const fs::path& dir) {
  Overrides o;
  o.out = dir.string();
  return o;
}

}  // namespace

TEST(CmdRun, Instance1ReportsRegretOne) {
  const fs::path dir = scratch("instance1");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(config_path("instance1.json"), out_to(dir), out, err), kExitOk) << err.str();
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "dynamic_regret 1");
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_EQ(summary.at("totals").at("dynamic_regret").get<double>(), 1.0);
  EXPECT_EQ(summary.at("variations").at("path_variation").get<double>(), 1.0);
  const std::string csv = slurp(dir / "trace.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,w,f,f_star,regret");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1001);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(CmdRun, OutputsAreByteStable) {
  const fs::path a = scratch("stable_a");
  const fs::path b = scratch("stable_b");
  std::ostringstream out, err;
  Overrides oa = out_to(a);
  oa.seeds = 3;
  oa.seed = 5;
  Overrides ob = oa;
  ob.out = b.string();
  ASSERT_EQ(cmd_run(config_path("thm3.json"), oa, out, err), kExitOk) << err.str();
  ASSERT_EQ(cmd_run(config_path("thm3.json"), ob, out, err), kExitOk) << err.str();
  EXPECT_EQ(slurp(a / "trace.csv"), slurp(b / "trace.csv"));
  auto ja = nlohmann::json::parse(slurp(a / "summary.json"));
  auto jb = nlohmann::json::parse(slurp(b / "summary.json"));
  ja.at("config").erase("output");
  jb.at("config").erase("output");
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(ja.at("monte_carlo").at("n_seeds").get<int>(), 3);
}

TEST(CmdRun, MissingConfigIsAUsageError) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run("/nonexistent/config.json", {}, out, err), kExitUsage);
  EXPECT_FALSE(err.str().empty());
}

TEST(CmdRun, InvalidConfigsAreUsageErrors) {
  const fs::path dir = scratch("invalid");
  std::ostringstream out, err;
  nlohmann::json j = nlohmann::json::parse(slurp(config_path("instance1.json")));
  j["T"] = nlohmann::json::array();
  EXPECT_EQ(cmd_run(write_json(dir, "empty.json", j).string(), {}, out, err), kExitUsage);
  EXPECT_EQ(cmd_sweep(write_json(dir, "empty.json", j).string(), {}, out, err), kExitUsage);
  j["T"] = 10;
  j["policy"] = {{"type", "bandit_ogd"}, {"eta_rule", "thm4"}};
  EXPECT_EQ(cmd_run(write_json(dir, "mismatch.json", j).string(), {}, out, err), kExitUsage);
  j["policy"] = {{"type", "ogd"}, {"eta_rule", "thm9"}};
  EXPECT_EQ(cmd_run(write_json(dir, "rule.json", j).string(), {}, out, err), kExitUsage);
  std::ofstream(dir / "broken.json") << "{ not json";
  EXPECT_EQ(cmd_run((dir / "broken.json").string(), {}, out, err), kExitUsage);
}

TEST(CmdRun, RuntimeFailureExitsOne) {
  const fs::path dir = scratch("runtime");
  nlohmann::json j = nlohmann::json::parse(slurp(config_path("instance1.json")));
  j["output"] = (dir / "file_not_dir" / "x").string();
  std::ofstream(dir / "file_not_dir") << "occupied";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(write_json(dir, "cfg.json", j).string(), {}, out, err), kExitRuntime);
}

TEST(CmdSweep, WritesRatesAndSlope) {
  const fs::path dir = scratch("sweep");
  nlohmann::json j = nlohmann::json::parse(slurp(config_path("sweep_thm1.json")));
  j["T"] = {1000, 4000};
  std::ostringstream out, err;
  ASSERT_EQ(cmd_sweep(write_json(dir, "cfg.json", j).string(), out_to(dir), out, err), kExitOk)
      << err.str();
  const std::string csv = slurp(dir / "rates.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "T,policy,mean_regret,bound,std_error");
  const auto sweep = nlohmann::json::parse(slurp(dir / "sweep.json"));
  EXPECT_EQ(sweep.at("rows").size(), 2u);
  EXPECT_NEAR(sweep.at("slopes").at("ogd/thm1").get<double>(), 0.0, 0.1);
  EXPECT_NE(out.str().find("ogd/thm1 log-log slope"), std::string::npos);
}

TEST(CmdVerify, UnknownSuiteIsAUsageError) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("everything", out, err), kExitUsage);
}

TEST(CmdVerify, VariationsSuitePasses) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("variations", out, err), kExitOk);
  EXPECT_NE(out.str().find("criterion 11 PASS"), std::string::npos);
}

TEST(Config, PolicyListsAndLabels) {
  const auto config = parse_config(nlohmann::json::parse(R"({
    "sequence": {"generator": "instance1"},
    "T": [10, 20],
    "policy": [{"type": "ogd", "eta": 0.5}, {"type": "ogd", "eta_rule": "thm1"}],
    "feedback": {"type": "true_gradient"}
  })"));
  ASSERT_EQ(config.policies.size(), 2u);
  EXPECT_EQ(config.policies[0].label, "ogd/eta=0.5");
  EXPECT_EQ(config.policies[1].label, "ogd/thm1");
  EXPECT_EQ(config.horizons, (std::vector<std::size_t>{10, 20}));
  EXPECT_NO_THROW(validate(config));
  EXPECT_THROW(parse_config(nlohmann::json::parse(R"({"sequence": {}, "policy": [], "feedback": {}, "T": 3})")),
               ConfigError);
}

TEST(Config, EveryShippedConfigValidates) {
  for (const auto& entry : fs::directory_iterator(DYNREGRET_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(validate(load_config(entry.path().string()))) << entry.path();
  }
}

TEST(Output, FormatDoubleRoundTrips) {
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.3568862864853743)), 1.3568862864853743);
}

TEST(Stats, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1e3, 1e4, 1e5}, {std::sqrt(1e3), std::sqrt(1e4), std::sqrt(1e5)}), 0.5, 1e-12);
  EXPECT_NEAR(loglog_slope({1, 2, 4}, {3, 3, 3}), 0.0, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), InvalidArgument);
  EXPECT_THROW(loglog_slope({1, 2}, {1, -1}), InvalidArgument);
}

TEST(Binary, ExitCodes) {
  const std::string bin = DYNREGRET_CLI_BINARY;
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " --help > /dev/null").c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " run > /dev/null 2>&1").c_str())), 2);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " verify nope > /dev/null 2>&1").c_str())), 2);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " run --config /nonexistent.json > /dev/null 2>&1").c_str())), 2);
}
