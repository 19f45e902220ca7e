#include "hkdsho/orchestrator/decision.hpp"

#include <algorithm>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::orchestrator {

std::string to_string(Source s) {
  switch (s) {
    case Source::existing: return "existing";
    case Source::extracted: return "extracted";
    case Source::learner: return "learner";
    case Source::random: return "random";
  }
  return "unknown";
}

Source source_from_string(const std::string& s) {
  if (s == "existing") return Source::existing;
  if (s == "extracted") return Source::extracted;
  if (s == "learner") return Source::learner;
  if (s == "random") return Source::random;
  throw ContractError("unknown action source '" + s + "'");
}

ActionMap Decision::levels() const {
  ActionMap m;
  for (const auto& [a, p] : chosen) m[a] = p.level;
  return m;
}

double Decision::level(const std::string& actuator) const {
  auto it = chosen.find(actuator);
  if (it == chosen.end()) throw ContractError("decision has no actuator '" + actuator + "'");
  return it->second.level;
}

Source Decision::source(const std::string& actuator) const {
  auto it = chosen.find(actuator);
  if (it == chosen.end()) throw ContractError("decision has no actuator '" + actuator + "'");
  return it->second.source;
}

bool Decision::any_from(Source s) const {
  return std::any_of(chosen.begin(), chosen.end(), [&](const auto& kv) { return kv.second.source == s; });
}

std::vector<std::string> Decision::rule_ids_from(Source s) const {
  std::vector<std::string> ids;
  for (const auto& [_, p] : chosen) {
    if (p.source != s) continue;
    for (const auto& id : p.rule_ids)
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  return ids;
}

namespace {

bool offers(const MechanismProposals& m, const std::string& actuator) {
  return m.levels.count(actuator) && !m.conflicts.count(actuator);
}

std::vector<std::string> ids_for(const MechanismProposals& m, const std::string& actuator) {
  auto it = m.rule_ids.find(actuator);
  return it == m.rule_ids.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace

Decision decide(const MechanismProposals& existing, const MechanismProposals& extracted, const ActionMap& learner,
                Source learner_source) {
  Decision d;
  for (const auto& [actuator, learned] : learner) {
    ActionProposal p{actuator, learned, learner_source, {}};
    if (offers(existing, actuator)) {
      p = {actuator, existing.levels.at(actuator), Source::existing, ids_for(existing, actuator)};
    } else if (offers(extracted, actuator)) {
      p = {actuator, extracted.levels.at(actuator), Source::extracted, ids_for(extracted, actuator)};
    }
    d.chosen.emplace(actuator, std::move(p));
  }
  return d;
}

}  // namespace hkdsho::orchestrator
