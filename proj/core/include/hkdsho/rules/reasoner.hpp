#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hkdsho/rules/types.hpp"

namespace hkdsho::rules {

/// Pearson product-moment correlation. Zero-variance input gives 0.
/// Throws ContractError on length mismatch or fewer than two samples.
double ppmcc(std::span<const double> x, std::span<const double> y);

struct ExistingMatch {
  ActionMap levels;
  std::map<std::string, std::string> rule_of;  // actuator -> rule that set it
  std::set<std::string> conflicts;             // actuators with an unresolved tie

  bool empty() const { return levels.empty() && conflicts.empty(); }
};

/// Fires every existing rule whose conditions hold. Per actuator the highest
/// priority wins; equal-priority rules that disagree mark a conflict.
ExistingMatch existing_match(std::span<const ExistingRule> rules, const Observation& observation);

enum class InferenceBranch { single_containment, correlation, occurrence_count };

std::string to_string(InferenceBranch b);

struct Inference {
  std::string rule_id;
  ActionMap conclusions;
  InferenceBranch branch = InferenceBranch::single_containment;
  /// Candidate rule ids and their correlations (empty on the containment branch).
  std::vector<std::pair<std::string, double>> correlations;
};

/// Extracted-rules reasoner for one service.
///
/// Exactly one rule containing the observation: its conclusions. Otherwise the
/// candidates are the containing rules, or every rule when none contains it;
/// the best-correlated candidate wins when it beats the runner-up by more than
/// `corr_epsilon`, else the candidate with the largest occurrence sum.
/// nullopt when there are no rules. When `ranges` is non-empty (one per
/// state), both vectors are min-max scaled by it before correlating.
std::optional<Inference> extracted_infer(std::span<const ExtractedRule> rules, std::span<const double> observation,
                                         double corr_epsilon = 0.01, std::span<const Interval> ranges = {});

}  // namespace hkdsho::rules
