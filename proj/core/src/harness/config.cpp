#include "hkdsho/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/rules/serialization.hpp"

namespace hkdsho::harness {

using nlohmann::json;
using orchestrator::Variant;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!ok.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

Interval interval_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + ": expected [min, max]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json interval_to(const Interval& i) { return json::array({i.min, i.max}); }

void read_light(const json& j, env::LightParams& p) {
  const std::string w = "environment.light";
  check_keys(j, {"beta", "lamp_levels", "curtain_levels", "gauss_amplitude", "gauss_mean", "gauss_stddev",
                 "noise_scale"}, w);
  read(j, "beta", p.beta, w);
  read(j, "lamp_levels", p.lamp_levels, w);
  read(j, "curtain_levels", p.curtain_levels, w);
  read(j, "gauss_amplitude", p.gauss_amplitude, w);
  read(j, "gauss_mean", p.gauss_mean, w);
  read(j, "gauss_stddev", p.gauss_stddev, w);
  read(j, "noise_scale", p.noise_scale, w);
}

void read_thermal(const json& j, env::ThermalParams& p) {
  const std::string w = "environment.thermal";
  check_keys(j, {"A", "B", "C", "D", "cp", "rho", "volume", "ac_levels", "window_levels", "curtain_levels",
                 "duration_levels", "ac_power_coeff", "loss_coeff", "max_step_duration_h"}, w);
  read(j, "A", p.A, w);
  read(j, "B", p.B, w);
  read(j, "C", p.C, w);
  read(j, "D", p.D, w);
  read(j, "cp", p.cp, w);
  read(j, "rho", p.rho, w);
  read(j, "volume", p.volume, w);
  read(j, "ac_levels", p.ac_levels, w);
  read(j, "window_levels", p.window_levels, w);
  read(j, "curtain_levels", p.curtain_levels, w);
  read(j, "duration_levels", p.duration_levels, w);
  read(j, "ac_power_coeff", p.ac_power_coeff, w);
  read(j, "loss_coeff", p.loss_coeff, w);
  read(j, "max_step_duration_h", p.max_step_duration_h, w);
}

void read_air(const json& j, env::AirParams& p) {
  const std::string w = "environment.air";
  check_keys(j, {"volume", "purifier_levels", "window_levels", "duration_levels", "exchange_rate",
                 "exhaled_co2_ppm", "occupants", "breathing_minutes", "outdoor_base", "outdoor_amplitude",
                 "outdoor_noise", "max_step_duration_h"}, w);
  read(j, "volume", p.volume, w);
  read(j, "purifier_levels", p.purifier_levels, w);
  read(j, "window_levels", p.window_levels, w);
  read(j, "duration_levels", p.duration_levels, w);
  read(j, "exchange_rate", p.exchange_rate, w);
  read(j, "exhaled_co2_ppm", p.exhaled_co2_ppm, w);
  read(j, "occupants", p.occupants, w);
  read(j, "breathing_minutes", p.breathing_minutes, w);
  read(j, "outdoor_base", p.outdoor_base, w);
  read(j, "outdoor_amplitude", p.outdoor_amplitude, w);
  read(j, "outdoor_noise", p.outdoor_noise, w);
  read(j, "max_step_duration_h", p.max_step_duration_h, w);
}

void read_environment(const json& j, env::EnvironmentConfig& e) {
  const std::string w = "environment";
  check_keys(j, {"minutes_per_step", "light", "thermal", "air", "inhabitant", "preferences", "initial", "ranges"}, w);
  read(j, "minutes_per_step", e.minutes_per_step, w);
  if (j.contains("light")) read_light(j["light"], e.light);
  if (j.contains("thermal")) read_thermal(j["thermal"], e.thermal);
  if (j.contains("air")) read_air(j["air"], e.air);
  if (j.contains("inhabitant")) {
    const auto& h = j["inhabitant"];
    check_keys(h, {"states", "breathing_mg_s", "breathing_conversion"}, w + ".inhabitant");
    read(h, "states", e.inhabitant.state_labels, w + ".inhabitant");
    read(h, "breathing_mg_s", e.inhabitant.breathing_mg_s, w + ".inhabitant");
    read(h, "breathing_conversion", e.inhabitant.breathing_conversion, w + ".inhabitant");
  }
  if (j.contains("preferences")) {
    const auto& p = j["preferences"];
    if (!p.is_object()) throw ConfigError(w + ".preferences: expected an object");
    env::PreferenceTable table;
    for (const auto& [service, intervals] : p.items()) {
      const std::string pw = w + ".preferences." + service;
      if (!intervals.is_array()) throw ConfigError(pw + ": expected a list of [min, max]");
      for (std::size_t s = 0; s < intervals.size(); ++s)
        table.set(service, s, interval_from(intervals[s], pw + "[" + std::to_string(s) + "]"));
    }
    e.preferences = table;
  }
  if (j.contains("initial")) {
    const auto& i = j["initial"];
    check_keys(i, {"lr", "tr", "ar"}, w + ".initial");
    read(i, "lr", e.initial_lr, w + ".initial");
    read(i, "tr", e.initial_tr, w + ".initial");
    read(i, "ar", e.initial_ar, w + ".initial");
  }
  if (j.contains("ranges")) {
    const auto& r = j["ranges"];
    check_keys(r, {"le", "te", "ae", "lr", "tr", "ar"}, w + ".ranges");
    for (const auto& [state, value] : r.items()) e.ranges[state] = interval_from(value, w + ".ranges." + state);
  }
}

void read_agent(const json& j, agents::AgentConfig& a) {
  const std::string w = "agent";
  check_keys(j, {"epsilon_start", "epsilon_end", "epsilon_decay_steps", "gamma", "learning_rate", "replay_capacity",
                 "batch_size", "target_sync_interval", "hidden", "zero_init"}, w);
  read(j, "epsilon_start", a.epsilon_start, w);
  read(j, "epsilon_end", a.epsilon_end, w);
  read(j, "epsilon_decay_steps", a.epsilon_decay_steps, w);
  read(j, "gamma", a.gamma, w);
  read(j, "learning_rate", a.learning_rate, w);
  read(j, "replay_capacity", a.replay_capacity, w);
  read(j, "batch_size", a.batch_size, w);
  read(j, "target_sync_interval", a.target_sync_interval, w);
  read(j, "hidden", a.hidden, w);
  read(j, "zero_init", a.zero_init, w);
}

void read_reward(const json& j, env::RewardConfig& r) {
  const std::string w = "reward";
  check_keys(j, {"satisfied", "dissatisfied", "constraint_weight"}, w);
  read(j, "satisfied", r.satisfied_reward, w);
  read(j, "dissatisfied", r.dissatisfied_reward, w);
  read(j, "constraint_weight", r.constraint_weight, w);
}

void read_rules(const json& j, orchestrator::HomeConfig& h) {
  const std::string w = "rules";
  check_keys(j, {"merge_tolerance_fraction", "corr_epsilon", "scaled_correlation", "existing"}, w);
  read(j, "merge_tolerance_fraction", h.merge_tolerance_fraction, w);
  read(j, "corr_epsilon", h.corr_epsilon, w);
  read(j, "scaled_correlation", h.scaled_correlation, w);
  if (j.contains("existing")) {
    if (!j["existing"].is_array()) throw ConfigError(w + ".existing: expected a list");
    h.existing_rules.clear();
    for (const auto& r : j["existing"]) {
      try {
        h.existing_rules.push_back(r.get<rules::ExistingRule>());
      } catch (const json::exception& e) {
        throw ConfigError(w + ".existing: " + e.what());
      }
    }
  }
}

std::size_t state_from(const json& j, const env::InhabitantModel& m, const std::string& where) {
  if (j.is_string()) return m.state_index(j.get<std::string>());
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  throw ConfigError(where + ": inhabitant state must be a label or an index");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (steps < 2) throw ConfigError("steps must be >= 2 so at least one step can be evaluated");
  if (variants.empty()) throw ConfigError("at least one variant is required");
  for (auto v : variants)
    if (std::count(variants.begin(), variants.end(), v) > 1)
      throw ConfigError("variant '" + orchestrator::to_string(v) + "' listed twice");
  if (!(eval_fraction > 0.0 && eval_fraction <= 1.0)) throw ConfigError("eval_fraction must be in (0, 1]");
  if (output.csv.empty()) throw ConfigError("output.csv must not be empty");
  for (const auto& c : home.target_changes)
    if (c.step >= steps) throw ConfigError("target change scheduled after the last step");
  home.validate();
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  check_keys(j, {"seeds", "steps", "services", "arrangement", "constraint", "variants", "eval_fraction",
                 "environment", "complexity", "reward", "agent", "rules", "target_changes", "output"}, "config");
  const std::string w = "config";
  read(j, "seeds", c.seeds, w);
  read(j, "steps", c.steps, w);
  read(j, "services", c.home.services, w);
  if (j.contains("arrangement")) {
    std::string a;
    read(j, "arrangement", a, w);
    c.arrangement = agents::arrangement_from_string(a);
  }
  read(j, "constraint", c.constraint, w);
  if (j.contains("variants")) {
    std::vector<std::string> names;
    read(j, "variants", names, w);
    c.variants.clear();
    for (const auto& n : names) c.variants.push_back(orchestrator::variant_from_string(n));
  }
  read(j, "eval_fraction", c.eval_fraction, w);
  if (j.contains("environment")) read_environment(j["environment"], c.home.env);
  if (j.contains("complexity")) read(j, "complexity", c.home.complexity, w);
  if (j.contains("reward")) read_reward(j["reward"], c.home.reward);
  if (j.contains("agent")) read_agent(j["agent"], c.home.agent);
  if (j.contains("rules")) read_rules(j["rules"], c.home);
  if (j.contains("target_changes")) {
    if (!j["target_changes"].is_array()) throw ConfigError("target_changes: expected a list");
    for (const auto& t : j["target_changes"]) {
      const std::string tw = "target_changes[]";
      check_keys(t, {"step", "service", "state", "target"}, tw);
      if (!t.contains("step") || !t.contains("service") || !t.contains("state") || !t.contains("target"))
        throw ConfigError(tw + ": step, service, state and target are required");
      orchestrator::TargetChange tc;
      read(t, "step", tc.step, tw);
      read(t, "service", tc.service, tw);
      tc.inhabitant_state = state_from(t["state"], c.home.env.inhabitant, tw + ".state");
      tc.target = interval_from(t["target"], tw + ".target");
      c.home.target_changes.push_back(tc);
    }
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    check_keys(o, {"directory", "csv", "trace", "rules", "weights"}, "output");
    std::string dir = c.output.directory.string();
    read(o, "directory", dir, "output");
    c.output.directory = dir;
    read(o, "csv", c.output.csv, "output");
    read(o, "trace", c.output.trace, "output");
    read(o, "rules", c.output.rules, "output");
    read(o, "weights", c.output.weights, "output");
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  const auto& e = c.home.env;
  json prefs = json::object();
  for (const auto& [service, intervals] : e.preferences.table()) {
    json list = json::array();
    for (const auto& i : intervals) list.push_back(interval_to(i));
    prefs[service] = list;
  }
  json ranges = json::object();
  for (const auto& [state, r] : e.ranges) ranges[state] = interval_to(r);
  std::vector<std::string> variants;
  for (auto v : c.variants) variants.push_back(orchestrator::to_string(v));
  json targets = json::array();
  for (const auto& t : c.home.target_changes)
    targets.push_back({{"step", t.step}, {"service", t.service}, {"state", t.inhabitant_state},
                       {"target", interval_to(t.target)}});
  json existing = json::array();
  for (const auto& r : c.home.existing_rules) existing.push_back(r);
  const auto& a = c.home.agent;
  return {
      {"seeds", c.seeds},
      {"steps", c.steps},
      {"services", c.home.services},
      {"arrangement", agents::to_string(c.arrangement)},
      {"constraint", c.constraint},
      {"variants", variants},
      {"eval_fraction", c.eval_fraction},
      {"environment",
       {{"minutes_per_step", e.minutes_per_step},
        {"light",
         {{"beta", e.light.beta}, {"lamp_levels", e.light.lamp_levels}, {"curtain_levels", e.light.curtain_levels},
          {"gauss_amplitude", e.light.gauss_amplitude}, {"gauss_mean", e.light.gauss_mean},
          {"gauss_stddev", e.light.gauss_stddev}, {"noise_scale", e.light.noise_scale}}},
        {"thermal",
         {{"A", e.thermal.A}, {"B", e.thermal.B}, {"C", e.thermal.C}, {"D", e.thermal.D}, {"cp", e.thermal.cp},
          {"rho", e.thermal.rho}, {"volume", e.thermal.volume}, {"ac_levels", e.thermal.ac_levels},
          {"window_levels", e.thermal.window_levels}, {"curtain_levels", e.thermal.curtain_levels},
          {"duration_levels", e.thermal.duration_levels}, {"ac_power_coeff", e.thermal.ac_power_coeff},
          {"loss_coeff", e.thermal.loss_coeff}, {"max_step_duration_h", e.thermal.max_step_duration_h}}},
        {"air",
         {{"volume", e.air.volume}, {"purifier_levels", e.air.purifier_levels}, {"window_levels", e.air.window_levels},
          {"duration_levels", e.air.duration_levels}, {"exchange_rate", e.air.exchange_rate},
          {"exhaled_co2_ppm", e.air.exhaled_co2_ppm}, {"occupants", e.air.occupants},
          {"breathing_minutes", e.air.breathing_minutes}, {"outdoor_base", e.air.outdoor_base},
          {"outdoor_amplitude", e.air.outdoor_amplitude}, {"outdoor_noise", e.air.outdoor_noise},
          {"max_step_duration_h", e.air.max_step_duration_h}}},
        {"inhabitant",
         {{"states", e.inhabitant.state_labels}, {"breathing_mg_s", e.inhabitant.breathing_mg_s},
          {"breathing_conversion", e.inhabitant.breathing_conversion}}},
        {"preferences", prefs},
        {"initial", {{"lr", e.initial_lr}, {"tr", e.initial_tr}, {"ar", e.initial_ar}}},
        {"ranges", ranges}}},
      {"complexity", c.home.complexity},
      {"reward",
       {{"satisfied", c.home.reward.satisfied_reward}, {"dissatisfied", c.home.reward.dissatisfied_reward},
        {"constraint_weight", c.home.reward.constraint_weight}}},
      {"agent",
       {{"epsilon_start", a.epsilon_start}, {"epsilon_end", a.epsilon_end},
        {"epsilon_decay_steps", a.epsilon_decay_steps}, {"gamma", a.gamma}, {"learning_rate", a.learning_rate},
        {"replay_capacity", a.replay_capacity}, {"batch_size", a.batch_size},
        {"target_sync_interval", a.target_sync_interval}, {"hidden", a.hidden}, {"zero_init", a.zero_init}}},
      {"rules",
       {{"merge_tolerance_fraction", c.home.merge_tolerance_fraction}, {"corr_epsilon", c.home.corr_epsilon},
        {"scaled_correlation", c.home.scaled_correlation},
        {"existing", existing}}},
      {"target_changes", targets},
      {"output",
       {{"directory", c.output.directory.string()}, {"csv", c.output.csv}, {"trace", c.output.trace},
        {"rules", c.output.rules}, {"weights", c.output.weights}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  try {
    auto c = config_from_json(j);
    c.validate();
    return c;
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace hkdsho::harness
