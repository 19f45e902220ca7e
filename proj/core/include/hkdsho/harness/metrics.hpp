#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hkdsho/orchestrator/records.hpp"

namespace hkdsho::harness {

struct MetricsEntry {
  std::string variant;
  std::uint64_t seed = 0;
  std::map<std::string, double> service_accuracy;
  double all_accuracy = 0.0;
  /// Mean of the per-service accuracies and the all-services accuracy.
  double average_accuracy = 0.0;
  std::size_t steps = 0;
  std::size_t eval_steps = 0;
  double wall_seconds = 0.0;  // not written to the CSV
};

struct MetricsReport {
  std::vector<MetricsEntry> entries;

  /// Throws NotFoundError.
  const MetricsEntry& find(const std::string& variant, std::uint64_t seed) const;
};

/// `correct[service][i]` says whether the action at step i satisfied the
/// service. Only the last `window` steps count. Throws ContractError for an
/// empty window, a window longer than the data, or ragged inputs.
MetricsEntry accuracy_from_correctness(const std::map<std::string, std::vector<bool>>& correct, std::size_t window);

/// Step i is correct for a service when record i+1 carries a positive reward for it.
std::map<std::string, std::vector<bool>> correctness(const std::vector<orchestrator::StepRecord>& records);

/// Accuracy over the last `window` evaluable steps (one fewer than the record count).
MetricsEntry accuracy_metrics(const std::vector<orchestrator::StepRecord>& records, std::size_t window);

/// Window length for `fraction` of `evaluable` steps, at least one.
std::size_t eval_window(std::size_t evaluable, double fraction);

/// header `variant,seed,metric,value`; one row per entry and metric.
void write_csv(std::ostream& out, const MetricsReport& report);

}  // namespace hkdsho::harness
