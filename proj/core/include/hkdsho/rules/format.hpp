#pragma once

#include <string>

#include "hkdsho/rules/store.hpp"

namespace hkdsho::rules {

/// "if x0 in [min, max] (avg m) and ... then a0=s (count c), ..."
std::string format_rule(const ExtractedRule& r);
std::string format_rule(const ExistingRule& r);
/// Every rule in the store, one block each.
std::string format_store(const RuleStore& store);

}  // namespace hkdsho::rules
