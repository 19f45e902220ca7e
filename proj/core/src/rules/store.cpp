#include "hkdsho/rules/store.hpp"

#include <algorithm>
#include <set>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::rules {

bool ExtractedRule::contains(std::span<const double> observation) const {
  if (observation.size() != conditions.size()) throw ContractError("observation does not match rule conditions");
  for (std::size_t i = 0; i < conditions.size(); ++i)
    if (observation[i] < conditions[i].min || observation[i] > conditions[i].max) return false;
  return true;
}

bool ExtractedRule::same_conclusions(const ExtractedRule& other) const {
  return actions() == other.actions() && conclusions.size() == other.conclusions.size();
}

std::vector<double> ExtractedRule::averages() const {
  std::vector<double> out;
  out.reserve(conditions.size());
  for (const auto& c : conditions) out.push_back(c.avg);
  return out;
}

std::size_t ExtractedRule::occurrence_sum() const {
  std::size_t s = 0;
  for (const auto& c : conclusions) s += c.count;
  return s;
}

ActionMap ExtractedRule::actions() const {
  ActionMap m;
  for (const auto& c : conclusions) m[c.actuator] = c.level;
  return m;
}

bool ExistingRule::matches(const Observation& o) const {
  for (const auto& c : conditions) {
    auto v = o.find(c.state);
    if (!v || *v < c.min || *v > c.max) return false;
  }
  return true;
}

std::string to_string(RuleEventKind k) {
  switch (k) {
    case RuleEventKind::extracted: return "extracted";
    case RuleEventKind::merged: return "merged";
    case RuleEventKind::deleted: return "deleted";
  }
  return "unknown";
}

RuleEventKind rule_event_from_string(const std::string& s) {
  if (s == "extracted") return RuleEventKind::extracted;
  if (s == "merged") return RuleEventKind::merged;
  if (s == "deleted") return RuleEventKind::deleted;
  throw ContractError("unknown rule event '" + s + "'");
}

RuleStore::RuleStore(std::vector<ExistingRule> existing) : existing_(std::move(existing)) {
  std::set<std::string> ids;
  for (const auto& r : existing_) {
    if (r.id.empty()) throw ConfigError("existing rule without an id");
    if (!ids.insert(r.id).second) throw ConfigError("duplicate rule id '" + r.id + "'");
    if (r.conditions.empty() || r.conclusions.empty())
      throw ConfigError("existing rule '" + r.id + "' needs at least one condition and one conclusion");
  }
}

const std::vector<ExtractedRule>& RuleStore::extracted(const std::string& service) const {
  static const std::vector<ExtractedRule> empty;
  auto it = extracted_.find(service);
  return it == extracted_.end() ? empty : it->second;
}

std::vector<ExtractedRule> RuleStore::all_extracted() const {
  std::vector<ExtractedRule> out;
  for (const auto& [_, rules] : extracted_) out.insert(out.end(), rules.begin(), rules.end());
  return out;
}

std::size_t RuleStore::extracted_count() const {
  std::size_t n = 0;
  for (const auto& [_, rules] : extracted_) n += rules.size();
  return n;
}

const ExtractedRule* RuleStore::find_extracted(const std::string& id) const {
  for (const auto& [_, rules] : extracted_)
    for (const auto& r : rules)
      if (r.id == id) return &r;
  return nullptr;
}

bool RuleStore::is_existing_id(const std::string& id) const {
  return std::any_of(existing_.begin(), existing_.end(), [&](const ExistingRule& r) { return r.id == id; });
}

std::string RuleStore::insert_extracted(ExtractedRule rule, std::uint64_t step) {
  std::string id;
  do {
    id = "x" + std::to_string(next_id_++);
  } while (is_existing_id(id) || find_extracted(id));
  rule.id = id;
  append_log({step, RuleEventKind::extracted, id, rule.service, {}});
  extracted_[rule.service].push_back(std::move(rule));
  return id;
}

bool operator==(const RuleStore& a, const RuleStore& b) {
  auto non_empty = [](const auto& m) {
    std::map<std::string, std::vector<ExtractedRule>> out;
    for (const auto& [k, v] : m)
      if (!v.empty()) out.emplace(k, v);
    return out;
  };
  return a.existing_ == b.existing_ && non_empty(a.extracted_) == non_empty(b.extracted_) && a.log_ == b.log_ &&
         a.next_id_ == b.next_id_;
}

}  // namespace hkdsho::rules
