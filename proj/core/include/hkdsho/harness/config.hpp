#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkdsho/orchestrator/home_system.hpp"

namespace hkdsho::harness {

struct OutputConfig {
  std::filesystem::path directory = "results";
  std::string csv = "metrics.csv";
  bool trace = false;    // JSON-lines StepRecord stream per run
  bool rules = true;     // rule store per run (rule-using variants)
  bool weights = false;  // agent weights per run and service
};

struct ExperimentConfig {
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::uint64_t steps = 2000;
  agents::Arrangement arrangement = agents::Arrangement::epba;
  bool constraint = false;
  std::vector<orchestrator::Variant> variants{
      orchestrator::Variant::random, orchestrator::Variant::shoma_only, orchestrator::Variant::no_extracted,
      orchestrator::Variant::no_existing, orchestrator::Variant::full};
  /// Trailing fraction of evaluable steps used for accuracy.
  double eval_fraction = 0.2;
  orchestrator::HomeConfig home;
  OutputConfig output;

  orchestrator::SystemVariant system_variant(orchestrator::Variant v) const { return {v, arrangement, constraint}; }
  /// Throws ConfigError; never touches the filesystem.
  void validate() const;
};

/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Throws IoError (unreadable) or ConfigError (malformed / invalid), both naming the path.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace hkdsho::harness
