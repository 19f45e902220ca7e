#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hkdsho/common/types.hpp"

namespace hkdsho::rules {

/// "state lies in [min, max] with average avg"; an instance rule has min == avg == max.
struct StateCondition {
  std::string state;
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;

  friend bool operator==(const StateCondition&, const StateCondition&) = default;
};

/// "actuator takes `level`, seen `count` times".
struct Conclusion {
  std::string actuator;
  double level = 0.0;
  std::size_t count = 1;

  friend bool operator==(const Conclusion&, const Conclusion&) = default;
};

/// A rule distilled from the learner. Conditions follow the service input order.
struct ExtractedRule {
  std::string id;
  std::string service;
  std::vector<StateCondition> conditions;
  std::vector<Conclusion> conclusions;
  std::size_t merge_count = 1;

  /// Every condition interval contains the matching observation value.
  bool contains(std::span<const double> observation) const;
  /// Same actuators with the same levels (counts ignored).
  bool same_conclusions(const ExtractedRule& other) const;
  std::vector<double> averages() const;
  std::size_t occurrence_sum() const;
  ActionMap actions() const;

  friend bool operator==(const ExtractedRule&, const ExtractedRule&) = default;
};

/// One predicate of a hand-authored rule; an exact match has min == max.
struct ExistingCondition {
  std::string state;
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const ExistingCondition&, const ExistingCondition&) = default;
};

struct ExistingRule {
  std::string id;
  std::vector<ExistingCondition> conditions;
  ActionMap conclusions;
  int priority = 0;

  /// All conditions hold; a condition on a state the observation lacks fails.
  bool matches(const Observation& o) const;

  friend bool operator==(const ExistingRule&, const ExistingRule&) = default;
};

enum class RuleEventKind { extracted, merged, deleted };

std::string to_string(RuleEventKind k);
RuleEventKind rule_event_from_string(const std::string& s);

struct RuleEvent {
  std::uint64_t step = 0;
  RuleEventKind kind = RuleEventKind::extracted;
  std::string rule_id;
  std::string service;
  /// For merges: the rule id that disappeared, or empty when an instance was absorbed.
  std::string absorbed_id;

  friend bool operator==(const RuleEvent&, const RuleEvent&) = default;
};

}  // namespace hkdsho::rules
