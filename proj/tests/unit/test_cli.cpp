#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "hkdsho/rules/extraction.hpp"
#include "hkdsho/rules/serialization.hpp"
#include "oracles.hpp"

using namespace hkdsho;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hkdsho");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string default_config() { return (oracle::source_dir() / "configs/default.json").string(); }

}  // namespace

TEST(Cli, ValidateShippedConfig) {
  const auto r = run({"validate", default_config()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST(Cli, RunMissingFile) {
  const auto r = run({"run", "/nonexistent/experiment.json"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("/nonexistent/experiment.json"), std::string::npos);
}

TEST(Cli, UnknownFlagIsUsageError) {
  const auto r = run({"validate", default_config(), "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, RulesShowOneRule) {
  rules::RuleStore store;
  store.insert_extracted(rules::make_instance_rule("temp", std::vector<std::string>{"us", "tr"},
                                                   std::vector<double>{1, 18.5}, {{"ac", -1}}),
                         0);
  const auto dir = oracle::temp_dir("cli_rules");
  rules::save_store(store, dir / "store.json");
  const auto r = run({"rules", "show", (dir / "store.json").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '['), 3);  // rule id and two intervals
  EXPECT_NE(r.out.find("if us in [1, 1] (avg 1)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("then ac=-1 (count 1)"), std::string::npos) << r.out;
  const auto d = run({"rules", "dump", (dir / "store.json").string()});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(nlohmann::json::parse(d.out), rules::store_to_json(store));
}

TEST(Cli, RunThenReplay) {
  const auto dir = oracle::temp_dir("cli_run");
  const auto r = run({"run", default_config(), "-o", dir.string(), "--seeds", "2", "--steps", "120", "--trace", "-q"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "metrics.csv"));
  const auto p = run({"replay", (dir / "trace_full_seed2.jsonl").string()});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("steps 120"), std::string::npos);
  const auto s = run({"rules", "show", (dir / "rules_full_seed2.json").string()});
  EXPECT_EQ(s.code, 0) << s.err;
}
