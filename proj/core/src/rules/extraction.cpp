#include "hkdsho/rules/extraction.hpp"

#include <algorithm>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::rules {

ExtractedRule make_instance_rule(const std::string& service, std::span<const std::string> states,
                                 std::span<const double> values, const ActionMap& actions) {
  if (states.size() != values.size()) throw ContractError("instance rule: observation incomplete for service '" + service + "'");
  if (states.empty()) throw ContractError("instance rule needs at least one state");
  if (actions.empty()) throw ContractError("instance rule needs at least one conclusion");
  ExtractedRule r;
  r.service = service;
  for (std::size_t i = 0; i < states.size(); ++i) r.conditions.push_back({states[i], values[i], values[i], values[i]});
  for (const auto& [actuator, level] : actions) r.conclusions.push_back({actuator, level, 1});
  r.merge_count = 1;
  return r;
}

double GeneralizeOptions::tolerance_for(const std::string& state) const {
  auto it = tolerance.find(state);
  return it == tolerance.end() ? 0.0 : it->second;
}

bool fusable(const ExtractedRule& a, const ExtractedRule& b) {
  if (a.service != b.service || !a.same_conclusions(b) || a.conditions.size() != b.conditions.size()) return false;
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    const auto& x = a.conditions[i];
    const auto& y = b.conditions[i];
    if (x.state != y.state || x.min > y.max || y.min > x.max) return false;
  }
  return true;
}

void fuse_rules(ExtractedRule& into, const ExtractedRule& from) {
  if (into.conditions.size() != from.conditions.size() || !into.same_conclusions(from))
    throw ContractError("fusing rules with different shapes or conclusions");
  const double wa = static_cast<double>(into.merge_count);
  const double wb = static_cast<double>(from.merge_count);
  for (std::size_t i = 0; i < into.conditions.size(); ++i) {
    auto& c = into.conditions[i];
    const auto& o = from.conditions[i];
    c.min = std::min(c.min, o.min);
    c.max = std::max(c.max, o.max);
    c.avg = (c.avg * wa + o.avg * wb) / (wa + wb);
    // Rounding can push a weighted mean a hair outside the envelope.
    c.avg = std::clamp(c.avg, c.min, c.max);
  }
  for (auto& c : into.conclusions) {
    for (const auto& o : from.conclusions)
      if (o.actuator == c.actuator) c.count += o.count;
  }
  into.merge_count += from.merge_count;
}

GeneralizeResult generalize(const ExtractedRule& instance, RuleStore& store, const GeneralizeOptions& options,
                            std::uint64_t step) {
  auto& rules = store.extracted_mutable(instance.service);
  for (auto& r : rules) {
    if (!r.same_conclusions(instance) || r.conditions.size() != instance.conditions.size()) continue;
    bool comparable = true;
    for (std::size_t i = 0; i < r.conditions.size() && comparable; ++i) {
      const auto& c = r.conditions[i];
      const double v = instance.conditions[i].avg;
      const double tol = options.tolerance_for(c.state);
      comparable = c.state == instance.conditions[i].state && v >= c.min - tol && v <= c.max + tol;
    }
    if (!comparable) continue;
    fuse_rules(r, instance);
    store.append_log({step, RuleEventKind::merged, r.id, r.service, {}});
    return {r.id, true};
  }
  return {store.insert_extracted(instance, step), false};
}

std::vector<RuleEvent> merge_rules(RuleStore& store, std::uint64_t step) {
  std::vector<RuleEvent> events;
  std::vector<std::string> services;
  for (const auto& r : store.all_extracted())
    if (std::find(services.begin(), services.end(), r.service) == services.end()) services.push_back(r.service);

  for (const auto& service : services) {
    auto& rules = store.extracted_mutable(service);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < rules.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < rules.size(); ++j) {
          if (!fusable(rules[i], rules[j])) continue;
          fuse_rules(rules[i], rules[j]);
          RuleEvent e{step, RuleEventKind::merged, rules[i].id, service, rules[j].id};
          store.append_log(e);
          events.push_back(std::move(e));
          rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }
  return events;
}

void delete_rule(RuleStore& store, const std::string& rule_id, std::uint64_t step) {
  if (store.is_existing_id(rule_id)) throw ForbiddenError("rule '" + rule_id + "' is an existing rule and cannot be deleted");
  const ExtractedRule* r = store.find_extracted(rule_id);
  if (!r) throw NotFoundError("no extracted rule '" + rule_id + "'");
  const std::string service = r->service;
  auto& rules = store.extracted_mutable(service);
  std::erase_if(rules, [&](const ExtractedRule& x) { return x.id == rule_id; });
  store.append_log({step, RuleEventKind::deleted, rule_id, service, {}});
}

}  // namespace hkdsho::rules
