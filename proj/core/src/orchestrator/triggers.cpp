#include "hkdsho/orchestrator/triggers.hpp"

#include <algorithm>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::orchestrator {

TriggerResult apply_rule_triggers(const std::map<std::string, double>& rewards, const PendingLedger& ledger,
                                  const std::vector<agents::ServiceSpec>& services, rules::RuleStore& store,
                                  const rules::GeneralizeOptions& options, std::uint64_t step) {
  TriggerResult result;
  if (rewards.empty()) return result;
  const bool all_positive =
      std::all_of(rewards.begin(), rewards.end(), [](const auto& kv) { return kv.second > 0; });

  if (all_positive && ledger.decision.any_from(Source::learner)) {
    bool extracted_any = false;
    for (const auto& spec : services) {
      ActionMap learned;
      for (const auto& a : spec.actuators) {
        auto it = ledger.decision.chosen.find(a.name);
        if (it != ledger.decision.chosen.end() && it->second.source == Source::learner) learned[a.name] = it->second.level;
      }
      if (learned.empty()) continue;
      auto obs = ledger.observations.find(spec.id);
      if (obs == ledger.observations.end()) throw ContractError("ledger lacks the observation of '" + spec.id + "'");
      const auto names = spec.input_names();
      const auto instance = rules::make_instance_rule(spec.id, names, obs->second, learned);
      const auto g = rules::generalize(instance, store, options, step);
      result.events.push_back(
          {step, g.absorbed ? rules::RuleEventKind::merged : rules::RuleEventKind::extracted, g.rule_id, spec.id, {}});
      extracted_any = true;
    }
    if (extracted_any) {
      auto merged = rules::merge_rules(store, step);
      result.events.insert(result.events.end(), merged.begin(), merged.end());
    }
  } else if (!all_positive && ledger.decision.any_from(Source::extracted)) {
    for (const auto& id : ledger.decision.rule_ids_from(Source::extracted)) {
      const rules::ExtractedRule* rule = store.find_extracted(id);
      if (!rule) {
        result.warnings.push_back("rule " + id + " sourced step " + std::to_string(ledger.step) + " but is gone");
        continue;
      }
      const std::string service = rule->service;
      rules::delete_rule(store, id, step);
      result.events.push_back({step, rules::RuleEventKind::deleted, id, service, {}});
    }
  }
  return result;
}

}  // namespace hkdsho::orchestrator
