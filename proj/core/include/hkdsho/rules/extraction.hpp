#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hkdsho/rules/store.hpp"

namespace hkdsho::rules {

/// Instance rule: each condition pinned to the observed value, each conclusion counted once.
///
/// Throws ContractError when `values` does not match `states` or `actions` is empty.
ExtractedRule make_instance_rule(const std::string& service, std::span<const std::string> states,
                                 std::span<const double> values, const ActionMap& actions);

struct GeneralizeOptions {
  /// Per-state widening applied when testing whether an instance is "comparable"; missing states use 0.
  std::map<std::string, double> tolerance;

  double tolerance_for(const std::string& state) const;
};

struct GeneralizeResult {
  std::string rule_id;
  bool absorbed = false;  // false: stored as a new rule
};

/// Folds an instance into the first stored rule of the same service with the
/// same conclusions whose widened intervals contain it, or stores it as new.
GeneralizeResult generalize(const ExtractedRule& instance, RuleStore& store, const GeneralizeOptions& options,
                            std::uint64_t step);

/// Fuses `from` into `into`: interval envelope, merge-count weighted averages,
/// summed counts. Conclusions must match.
void fuse_rules(ExtractedRule& into, const ExtractedRule& from);

/// Same service, same conclusions, and every condition interval overlaps.
bool fusable(const ExtractedRule& a, const ExtractedRule& b);

/// Repeatedly fuses fusable pairs until none remain; the lower-positioned rule survives.
std::vector<RuleEvent> merge_rules(RuleStore& store, std::uint64_t step);

/// Removes an extracted rule. Unknown id -> NotFoundError; existing-rule id -> ForbiddenError.
void delete_rule(RuleStore& store, const std::string& rule_id, std::uint64_t step);

}  // namespace hkdsho::rules
