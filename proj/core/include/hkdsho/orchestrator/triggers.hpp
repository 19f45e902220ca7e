#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hkdsho/agents/service_spec.hpp"
#include "hkdsho/orchestrator/decision.hpp"
#include "hkdsho/rules/extraction.hpp"
#include "hkdsho/rules/store.hpp"

namespace hkdsho::orchestrator {

/// What happened at the previous step, kept until its rewards arrive.
struct PendingLedger {
  std::uint64_t step = 0;
  std::size_t inhabitant_state = 0;
  std::map<std::string, std::vector<double>> observations;  // service -> raw inputs
  Decision decision;
  std::map<std::string, double> outcomes;  // service -> monitored state after the action
  std::map<std::string, double> usage;     // service -> normalized electrical usage
};

struct TriggerResult {
  std::vector<rules::RuleEvent> events;
  std::vector<std::string> warnings;
};

/// Rule extraction and deletion driven by the delayed rewards.
///
/// All rewards positive and some learner-sourced actuator: one instance rule
/// per service over its learner-sourced actuators, generalized and merged.
/// Any non-positive reward and some extracted-rule-sourced actuator: those
/// rules are deleted. `services` carry each learner's inputs and actuators.
TriggerResult apply_rule_triggers(const std::map<std::string, double>& rewards, const PendingLedger& ledger,
                                  const std::vector<agents::ServiceSpec>& services, rules::RuleStore& store,
                                  const rules::GeneralizeOptions& options, std::uint64_t step);

}  // namespace hkdsho::orchestrator
