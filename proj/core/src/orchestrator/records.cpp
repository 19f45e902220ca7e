#include "hkdsho/orchestrator/records.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/rules/serialization.hpp"

namespace hkdsho::orchestrator {

using nlohmann::json;

namespace {

json mechanism_to_json(const MechanismProposals& m) {
  return json{{"levels", m.levels}, {"rule_ids", m.rule_ids}, {"conflicts", m.conflicts}};
}

MechanismProposals mechanism_from_json(const json& j) {
  MechanismProposals m;
  j.at("levels").get_to(m.levels);
  j.at("rule_ids").get_to(m.rule_ids);
  j.at("conflicts").get_to(m.conflicts);
  return m;
}

}  // namespace

json to_json(const StepRecord& r) {
  json obs = json::array();
  for (const auto& [name, value] : r.observation.readings()) obs.push_back({name, value});
  json actions = json::object();
  for (const auto& [actuator, p] : r.decision.chosen) {
    json a{{"level", p.level}, {"source", to_string(p.source)}};
    if (!p.rule_ids.empty()) a["rules"] = p.rule_ids;
    actions[actuator] = std::move(a);
  }
  json j{{"step", r.step},
         {"hour", r.hour},
         {"us", r.inhabitant_state},
         {"observation", obs},
         {"rewards", r.rewards ? json(*r.rewards) : json(nullptr)},
         {"events", r.events},
         {"proposals", {{"existing", mechanism_to_json(r.existing)},
                        {"extracted", mechanism_to_json(r.extracted)},
                        {"learner", r.learner}}},
         {"actions", actions},
         {"epsilon", r.epsilon},
         {"losses", r.losses},
         {"outcomes", r.outcomes}};
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

StepRecord record_from_json(const json& j) {
  StepRecord r;
  j.at("step").get_to(r.step);
  j.at("hour").get_to(r.hour);
  j.at("us").get_to(r.inhabitant_state);
  for (const auto& kv : j.at("observation")) r.observation.set(kv.at(0).get<std::string>(), kv.at(1).get<double>());
  if (!j.at("rewards").is_null()) r.rewards = j.at("rewards").get<std::map<std::string, double>>();
  r.events = j.at("events").get<std::vector<rules::RuleEvent>>();
  r.warnings = j.value("warnings", std::vector<std::string>{});
  const auto& p = j.at("proposals");
  r.existing = mechanism_from_json(p.at("existing"));
  r.extracted = mechanism_from_json(p.at("extracted"));
  p.at("learner").get_to(r.learner);
  for (const auto& [actuator, a] : j.at("actions").items()) {
    ActionProposal ap{actuator, a.at("level").get<double>(), source_from_string(a.at("source").get<std::string>()),
                      a.value("rules", std::vector<std::string>{})};
    r.decision.chosen.emplace(actuator, std::move(ap));
  }
  j.at("epsilon").get_to(r.epsilon);
  j.at("losses").get_to(r.losses);
  j.at("outcomes").get_to(r.outcomes);
  return r;
}

void write_jsonl(std::ostream& out, const std::vector<StepRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<StepRecord> read_jsonl(std::istream& in) {
  std::vector<StepRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw IoError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<StepRecord> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read trace " + path.string());
  try {
    return read_jsonl(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace hkdsho::orchestrator
