#pragma once

// Property checks over a StepRecord stream.

#include <algorithm>
#include <string>
#include <vector>

#include "hkdsho/orchestrator/home_system.hpp"

namespace hkdsho::oracle {

/// Empty when every rule event is justified by the previous step; otherwise a description.
inline std::string check_trigger_trace(const std::vector<orchestrator::StepRecord>& records) {
  using orchestrator::Source;
  for (std::size_t t = 0; t < records.size(); ++t) {
    const auto& r = records[t];
    if (r.events.empty()) continue;
    if (t == 0) return "rule event on the initial step";
    if (!r.rewards) return "rule event without rewards at step " + std::to_string(t);
    const auto& prev = records[t - 1].decision;
    const bool all_positive =
        std::all_of(r.rewards->begin(), r.rewards->end(), [](const auto& kv) { return kv.second > 0; });
    const auto extracted_ids = prev.rule_ids_from(Source::extracted);
    for (const auto& e : r.events) {
      if (e.kind == rules::RuleEventKind::deleted) {
        if (all_positive) return "deletion with all-positive rewards at step " + std::to_string(t);
        if (std::find(extracted_ids.begin(), extracted_ids.end(), e.rule_id) == extracted_ids.end())
          return "deleted rule " + e.rule_id + " did not source step " + std::to_string(t - 1);
      } else {
        if (!all_positive) return "extraction with a non-positive reward at step " + std::to_string(t);
        if (!prev.any_from(Source::learner)) return "extraction without learner actions at step " + std::to_string(t);
      }
    }
  }
  return {};
}

/// Empty when sources respect the variant and every step covers all actuators once.
inline std::string check_sources(const std::vector<orchestrator::StepRecord>& records,
                                 const orchestrator::SystemVariant& v, std::size_t actuator_count) {
  using orchestrator::Source;
  for (const auto& r : records) {
    if (r.decision.chosen.size() != actuator_count) return "decision does not cover every actuator";
    for (const auto& [a, p] : r.decision.chosen) {
      if (p.actuator != a) return "proposal filed under the wrong actuator";
      if (!v.uses_learner() && p.source != Source::random) return "non-random source in the random variant";
      if (v.uses_learner() && p.source == Source::random) return "random source in a learning variant";
      if (!v.uses_existing() && p.source == Source::existing) return "existing source while disabled";
      if (!v.uses_extracted() && p.source == Source::extracted) return "extracted source while disabled";
    }
  }
  return {};
}

}  // namespace hkdsho::oracle
