#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hkdsho/common/types.hpp"

namespace hkdsho::orchestrator {

enum class Source { existing, extracted, learner, random };

std::string to_string(Source s);
Source source_from_string(const std::string& s);

/// What one rule-based mechanism proposes; may be partial.
struct MechanismProposals {
  ActionMap levels;
  std::map<std::string, std::vector<std::string>> rule_ids;  // actuator -> rules that proposed it
  std::set<std::string> conflicts;

  bool empty() const { return levels.empty() && conflicts.empty(); }
};

struct ActionProposal {
  std::string actuator;
  double level = 0.0;
  Source source = Source::learner;
  std::vector<std::string> rule_ids;
};

/// Final choice: exactly one proposal per actuator.
struct Decision {
  std::map<std::string, ActionProposal> chosen;

  ActionMap levels() const;
  double level(const std::string& actuator) const;
  Source source(const std::string& actuator) const;
  bool any_from(Source s) const;
  /// Distinct rule ids that sourced at least one actuator with source `s`.
  std::vector<std::string> rule_ids_from(Source s) const;
};

/// Per-actuator priority cascade: existing rules, then extracted rules, then
/// the learner. Conflicted or missing rule proposals fall through. The output
/// covers exactly the actuators of `learner`.
Decision decide(const MechanismProposals& existing, const MechanismProposals& extracted, const ActionMap& learner,
                Source learner_source = Source::learner);

}  // namespace hkdsho::orchestrator
