#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hkdsho/harness/config.hpp"
#include "hkdsho/harness/metrics.hpp"

namespace hkdsho::harness {

struct RunResult {
  MetricsEntry metrics;
  std::vector<orchestrator::StepRecord> records;
};

/// One variant for one seed, in memory. Evaluates the trailing window.
RunResult run_single(const ExperimentConfig& config, orchestrator::Variant variant, std::uint64_t seed);

struct ExperimentResult {
  MetricsReport report;
  std::filesystem::path csv;
  std::vector<std::filesystem::path> artifacts;  // traces, rule stores, weights
};

/// Called after each (variant, seed) run.
using ProgressFn = std::function<void(const MetricsEntry&)>;

/// Runs every variant for every seed, then writes the CSV and enabled artifacts
/// under `config.output.directory`. Throws ConfigError before any run, IoError
/// with the path on write failures.
ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

/// "<variant>_seed<seed>"
std::string run_tag(orchestrator::Variant variant, std::uint64_t seed);

}  // namespace hkdsho::harness
