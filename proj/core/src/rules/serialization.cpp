#include "hkdsho/rules/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::rules {

using nlohmann::json;

void to_json(json& j, const StateCondition& c) {
  j = json{{"state", c.state}, {"min", c.min}, {"avg", c.avg}, {"max", c.max}};
}

void from_json(const json& j, StateCondition& c) {
  j.at("state").get_to(c.state);
  j.at("min").get_to(c.min);
  j.at("avg").get_to(c.avg);
  j.at("max").get_to(c.max);
  if (!(c.min <= c.avg && c.avg <= c.max)) throw ContractError("condition on '" + c.state + "' violates min <= avg <= max");
}

void to_json(json& j, const Conclusion& c) { j = json{{"actuator", c.actuator}, {"level", c.level}, {"count", c.count}}; }

void from_json(const json& j, Conclusion& c) {
  j.at("actuator").get_to(c.actuator);
  j.at("level").get_to(c.level);
  c.count = j.value("count", std::size_t{1});
  if (c.count < 1) throw ContractError("conclusion count must be >= 1");
}

void to_json(json& j, const ExtractedRule& r) {
  j = json{{"id", r.id},
           {"service", r.service},
           {"merge_count", r.merge_count},
           {"conditions", r.conditions},
           {"conclusions", r.conclusions}};
}

void from_json(const json& j, ExtractedRule& r) {
  j.at("id").get_to(r.id);
  j.at("service").get_to(r.service);
  j.at("merge_count").get_to(r.merge_count);
  j.at("conditions").get_to(r.conditions);
  j.at("conclusions").get_to(r.conclusions);
  if (r.merge_count < 1) throw ContractError("rule '" + r.id + "' has merge_count < 1");
}

void to_json(json& j, const ExistingRule& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) {
    if (c.min == c.max)
      conds.push_back({{"state", c.state}, {"equals", c.min}});
    else {
      // Open bounds are left out; the reader restores them as infinities.
      json cj{{"state", c.state}};
      if (std::isfinite(c.min)) cj["min"] = c.min;
      if (std::isfinite(c.max)) cj["max"] = c.max;
      conds.push_back(cj);
    }
  }
  json concl = json::array();
  for (const auto& [actuator, level] : r.conclusions) concl.push_back({{"actuator", actuator}, {"level", level}});
  j = json{{"id", r.id}, {"priority", r.priority}, {"conditions", conds}, {"conclusions", concl}};
}

void from_json(const json& j, ExistingRule& r) {
  j.at("id").get_to(r.id);
  r.priority = j.value("priority", 0);
  r.conditions.clear();
  for (const auto& c : j.at("conditions")) {
    ExistingCondition ec;
    c.at("state").get_to(ec.state);
    if (c.contains("equals")) {
      ec.min = ec.max = c.at("equals").get<double>();
    } else {
      ec.min = c.value("min", -std::numeric_limits<double>::infinity());
      ec.max = c.value("max", std::numeric_limits<double>::infinity());
    }
    if (ec.min > ec.max) throw ConfigError("existing rule '" + r.id + "' has an empty condition on '" + ec.state + "'");
    r.conditions.push_back(ec);
  }
  r.conclusions.clear();
  for (const auto& c : j.at("conclusions")) r.conclusions[c.at("actuator").get<std::string>()] = c.at("level").get<double>();
}

void to_json(json& j, const RuleEvent& e) {
  j = json{{"step", e.step}, {"event", to_string(e.kind)}, {"rule", e.rule_id}, {"service", e.service}};
  if (!e.absorbed_id.empty()) j["absorbed"] = e.absorbed_id;
}

void from_json(const json& j, RuleEvent& e) {
  j.at("step").get_to(e.step);
  e.kind = rule_event_from_string(j.at("event").get<std::string>());
  j.at("rule").get_to(e.rule_id);
  e.service = j.value("service", std::string{});
  e.absorbed_id = j.value("absorbed", std::string{});
}

json store_to_json(const RuleStore& store) {
  return json{{"version", kStoreVersion},
              {"next_id", store.next_id()},
              {"existing", store.existing()},
              {"extracted", store.all_extracted()},
              {"log", store.log()}};
}

RuleStore store_from_json(const json& j) {
  if (j.at("version").get<int>() != kStoreVersion) throw ContractError("unsupported rule store version");
  RuleStore store(j.at("existing").get<std::vector<ExistingRule>>());
  for (const auto& rj : j.at("extracted")) {
    auto r = rj.get<ExtractedRule>();
    if (store.find_extracted(r.id) || store.is_existing_id(r.id)) throw ContractError("duplicate rule id '" + r.id + "'");
    store.extracted_mutable(r.service).push_back(std::move(r));
  }
  for (const auto& ej : j.at("log")) store.append_log(ej.get<RuleEvent>());
  store.set_next_id(j.value("next_id", std::uint64_t{1}));
  return store;
}

void save_store(const RuleStore& store, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write rule store to " + path.string());
  out << store_to_json(store).dump(2) << '\n';
}

RuleStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read rule store " + path.string());
  try {
    return store_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw IoError("malformed rule store " + path.string() + ": " + e.what());
  }
}

}  // namespace hkdsho::rules
