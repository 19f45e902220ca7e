#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/harness/config.hpp"
#include "hkdsho/harness/experiment.hpp"
#include "hkdsho/harness/metrics.hpp"
#include "oracles.hpp"

using namespace hkdsho;
using namespace hkdsho::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small(const std::string& name) {
  auto c = load_config(oracle::source_dir() / "configs/default.json");
  c.steps = 300;
  c.seeds = {1};
  c.output.directory = oracle::temp_dir(name);
  return c;
}

}  // namespace

TEST(Accuracy, AllPositive) {
  const auto m = accuracy_from_correctness({{"a", {true, true, true}}, {"b", {true, true, true}}}, 3);
  EXPECT_EQ(m.service_accuracy.at("a"), 1.0);
  EXPECT_EQ(m.all_accuracy, 1.0);
  EXPECT_EQ(m.average_accuracy, 1.0);
}

TEST(Accuracy, HandCount) {
  // A correct on steps {1,2}, B on {2,3}, window of 4 steps.
  const auto m = accuracy_from_correctness({{"A", {false, true, true, false}}, {"B", {false, false, true, true}}}, 4);
  EXPECT_EQ(m.service_accuracy.at("A"), 0.5);
  EXPECT_EQ(m.service_accuracy.at("B"), 0.5);
  EXPECT_EQ(m.all_accuracy, 0.25);
  EXPECT_NEAR(m.average_accuracy, 1.25 / 3, 1e-15);
}

TEST(Accuracy, WindowGuards) {
  const std::map<std::string, std::vector<bool>> c{{"a", {true, false}}};
  EXPECT_THROW(accuracy_from_correctness(c, 3), ContractError);
  EXPECT_THROW(accuracy_from_correctness(c, 0), ContractError);
  EXPECT_EQ(accuracy_from_correctness(c, 1).service_accuracy.at("a"), 0.0);
}

TEST(Accuracy, FromRecordsUsesNextReward) {
  std::vector<orchestrator::StepRecord> recs(4);
  recs[1].rewards = std::map<std::string, double>{{"temp", 1}};
  recs[2].rewards = std::map<std::string, double>{{"temp", -1}};
  recs[3].rewards = std::map<std::string, double>{{"temp", 0.5}};
  const auto m = accuracy_metrics(recs, 3);
  EXPECT_NEAR(m.service_accuracy.at("temp"), 2.0 / 3, 1e-15);
  EXPECT_EQ(m.steps, 4u);
  EXPECT_THROW(accuracy_metrics(recs, 4), ContractError);
}

TEST(Accuracy, EvalWindow) {
  EXPECT_EQ(eval_window(1999, 0.2), 400u);
  EXPECT_EQ(eval_window(3, 0.01), 1u);
  EXPECT_EQ(eval_window(10, 1.0), 10u);
}

TEST(Config, ShippedDefaultValidates) {
  const auto c = load_config(oracle::source_dir() / "configs/default.json");
  EXPECT_EQ(c.steps, 2000u);
  EXPECT_EQ(c.seeds.size(), 3u);
  EXPECT_EQ(c.variants.size(), 5u);
  EXPECT_EQ(c.home.services, (std::vector<std::string>{"temp", "air"}));
  EXPECT_FALSE(c.home.existing_rules.empty());
}

TEST(Config, JsonRoundTrip) {
  const auto c = load_config(oracle::source_dir() / "configs/default.json");
  const auto j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);
}

TEST(Config, RejectsInvalid) {
  auto bad = [](const char* text) {
    const auto j = nlohmann::json::parse(text);
    return [j] { config_from_json(j).validate(); };
  };
  EXPECT_THROW(bad(R"({"steps": 0})")(), ConfigError);
  EXPECT_THROW(bad(R"({"variants": []})")(), ConfigError);
  EXPECT_THROW(bad(R"({"variants": ["best"]})")(), ConfigError);
  EXPECT_THROW(bad(R"({"services": ["temp", "smell"]})")(), ConfigError);
  EXPECT_THROW(bad(R"({"stpes": 10})")(), ConfigError);
  EXPECT_THROW(bad(R"({"environment": {"thermal": {"duration_levels": [0, 0.1, -1]}}})")(), ConfigError);
  EXPECT_THROW(bad(R"({"environment": {"light": {"lamp_levels": [2, 1]}}})")(), ConfigError);
  EXPECT_THROW(bad(R"({"environment": {"preferences": {"temp": [[0, 50], [16, 19], [19, 23], [18, 21]]}}})")(),
               ConfigError);
  EXPECT_THROW(bad(R"({"arrangement": "nope"})")(), ConfigError);
  EXPECT_NO_THROW(bad(R"({"arrangement": "rsaba", "services": ["light", "temp", "air"]})")());
}

TEST(Config, MissingFileNamesPath) {
  try {
    load_config("/nonexistent/cfg.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/cfg.json"), std::string::npos);
  }
}

TEST(Experiment, RandomSmokeMetricsInRange) {
  auto c = small("smoke");
  c.steps = 500;
  c.variants = {orchestrator::Variant::random};
  const auto r = run_experiment(c);
  ASSERT_EQ(r.report.entries.size(), 1u);
  const auto& e = r.report.entries[0];
  for (const auto& [s, a] : e.service_accuracy) {
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
  EXPECT_EQ(e.service_accuracy.size(), 2u);
  EXPECT_EQ(e.eval_steps, 100u);
}

TEST(Experiment, CsvSchemaAndDeterminism) {
  auto c = small("det_a");
  c.output.trace = true;
  c.output.weights = true;
  const auto a = run_experiment(c);
  c.output.directory = oracle::temp_dir("det_b");
  const auto b = run_experiment(c);
  EXPECT_EQ(slurp(a.csv), slurp(b.csv));
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) EXPECT_EQ(slurp(a.artifacts[i]), slurp(b.artifacts[i]));

  std::istringstream csv(slurp(a.csv));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "variant,seed,metric,value");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    const auto metric = line.substr(0, line.rfind(','));
    const double v = std::stod(line.substr(line.rfind(',') + 1));
    if (metric.find("accuracy") != std::string::npos) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  EXPECT_EQ(rows, 5u * 6u);
}

TEST(Experiment, UnwritableOutputNamesPath) {
  auto c = small("unwritable");
  c.variants = {orchestrator::Variant::random};
  c.output.directory = "/proc/hkdsho_cannot_write_here";
  try {
    run_experiment(c);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/proc/hkdsho_cannot_write_here"), std::string::npos);
  }
}

TEST(Experiment, InvalidConfigRejectedBeforeRunning) {
  auto c = small("invalid");
  c.steps = 1;
  EXPECT_THROW(run_experiment(c), ConfigError);
  EXPECT_FALSE(std::filesystem::exists(c.output.directory / c.output.csv));
}
