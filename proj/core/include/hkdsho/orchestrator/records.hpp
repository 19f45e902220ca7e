#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkdsho/orchestrator/decision.hpp"
#include "hkdsho/rules/types.hpp"

namespace hkdsho::orchestrator {

/// Everything observable about one step, in the order it happened.
struct StepRecord {
  std::uint64_t step = 0;
  double hour = 0.0;
  std::size_t inhabitant_state = 0;
  Observation observation;
  /// Rewards R_t for the previous step's actions; absent on the initial step.
  std::optional<std::map<std::string, double>> rewards;
  std::vector<rules::RuleEvent> events;
  std::vector<std::string> warnings;
  MechanismProposals existing;
  MechanismProposals extracted;
  ActionMap learner;
  Decision decision;
  double epsilon = 0.0;
  std::map<std::string, double> losses;    // service -> training loss this step
  std::map<std::string, double> outcomes;  // service -> monitored state after the action
};

nlohmann::json to_json(const StepRecord& r);
StepRecord record_from_json(const nlohmann::json& j);

/// One compact JSON object per line.
void write_jsonl(std::ostream& out, const std::vector<StepRecord>& records);
std::vector<StepRecord> read_jsonl(std::istream& in);
std::vector<StepRecord> read_jsonl(const std::filesystem::path& path);

}  // namespace hkdsho::orchestrator
