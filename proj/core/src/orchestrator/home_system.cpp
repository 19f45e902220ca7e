#include "hkdsho/orchestrator/home_system.hpp"

#include <algorithm>
#include <cmath>

#include "hkdsho/agents/policy.hpp"
#include "hkdsho/common/errors.hpp"
#include "hkdsho/env/dynamics.hpp"
#include "hkdsho/rules/reasoner.hpp"

namespace hkdsho::orchestrator {

namespace {

const std::vector<std::string> kKnownServices{"light", "temp", "air"};

std::vector<Actuator> actuator_catalog(const env::EnvironmentConfig& e) {
  return {{"lp", e.light.lamp_levels, true},       {"cur", e.light.curtain_levels, false},
          {"ac", e.thermal.ac_levels, true},       {"win", e.thermal.window_levels, false},
          {"act", e.thermal.duration_levels, false}, {"wct", e.thermal.duration_levels, false},
          {"ap", e.air.purifier_levels, true},     {"apt", e.air.duration_levels, false}};
}

const Actuator& catalog_entry(const std::vector<Actuator>& catalog, const std::string& name) {
  for (const auto& a : catalog)
    if (a.name == name) return a;
  throw ConfigError("unknown actuator '" + name + "'");
}

double initial_level(const Actuator& a) { return a.contains(0.0) ? 0.0 : a.levels.front(); }

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::random: return "random";
    case Variant::shoma_only: return "shoma_only";
    case Variant::no_extracted: return "no_extracted";
    case Variant::no_existing: return "no_existing";
    case Variant::full: return "full";
  }
  return "unknown";
}

Variant variant_from_string(const std::string& s) {
  if (s == "random") return Variant::random;
  if (s == "shoma_only" || s == "shoma") return Variant::shoma_only;
  if (s == "no_extracted") return Variant::no_extracted;
  if (s == "no_existing") return Variant::no_existing;
  if (s == "full" || s == "hkdsho") return Variant::full;
  throw ConfigError("unknown system variant '" + s + "'");
}

void HomeConfig::validate() const {
  env.validate();
  if (services.empty()) throw ConfigError("at least one service is required");
  for (const auto& s : services) {
    if (std::find(kKnownServices.begin(), kKnownServices.end(), s) == kKnownServices.end())
      throw ConfigError("unknown service '" + s + "'");
    if (std::count(services.begin(), services.end(), s) > 1) throw ConfigError("service '" + s + "' listed twice");
    if (!complexity.count(s)) throw ConfigError("no complexity rank for service '" + s + "'");
    if (!env.preferences.registered(s)) throw ConfigError("no preferences for service '" + s + "'");
  }
  if (env.thermal.window_levels != env.air.window_levels) throw ConfigError("window level sets differ between models");
  if (env.thermal.curtain_levels != env.light.curtain_levels) throw ConfigError("curtain level sets differ between models");
  if (env.thermal.duration_levels != env.air.duration_levels) throw ConfigError("duration level sets differ between models");
  agent.validate();
  reward.validate();
  if (merge_tolerance_fraction < 0) throw ConfigError("merge tolerance must be >= 0");
  if (corr_epsilon < 0) throw ConfigError("correlation epsilon must be >= 0");
  rules::RuleStore check(existing_rules);
  const auto catalog = actuator_catalog(env);
  for (const auto& r : existing_rules)
    for (const auto& [actuator, level] : r.conclusions)
      if (!catalog_entry(catalog, actuator).contains(level))
        throw ConfigError("existing rule '" + r.id + "' sets " + actuator + " to an invalid level");
  for (const auto& c : target_changes) {
    if (!env.preferences.registered(c.service)) throw ConfigError("target change for unknown service '" + c.service + "'");
    if (c.inhabitant_state >= env.inhabitant.n_states()) throw ConfigError("target change for unknown inhabitant state");
    if (!(c.target.min < c.target.max)) throw ConfigError("target change interval is empty");
  }
}

std::vector<agents::ServiceSpec> make_service_specs(const HomeConfig& config) {
  const auto& e = config.env;
  const auto catalog = actuator_catalog(e);
  const std::size_t n = e.inhabitant.n_states();
  const agents::InputSpec us{"us", 0.0, static_cast<double>(n - 1), n};
  auto continuous = [&](const std::string& name) {
    const Interval& r = e.range(name);
    return agents::InputSpec{name, r.min, r.max, 0};
  };
  auto acts = [&](std::initializer_list<const char*> names) {
    std::vector<Actuator> out;
    for (const char* a : names) out.push_back(catalog_entry(catalog, a));
    return out;
  };

  std::vector<agents::ServiceSpec> out;
  for (const auto& id : config.services) {
    agents::ServiceSpec s;
    s.id = id;
    s.complexity = config.complexity.at(id);
    if (id == "light") {
      s.monitored = "lr";
      s.inputs = {us, continuous("le")};
      s.actuators = acts({"lp", "cur"});
    } else if (id == "temp") {
      s.monitored = "tr";
      s.inputs = {us, continuous("te"), continuous("tr")};
      s.actuators = acts({"ac", "win", "cur", "act", "wct"});
    } else if (id == "air") {
      s.monitored = "ar";
      s.inputs = {us, continuous("ae"), continuous("ar")};
      s.actuators = acts({"ap", "win", "cur", "apt", "wct"});
    } else {
      throw ConfigError("unknown service '" + id + "'");
    }
    out.push_back(std::move(s));
  }
  return out;
}

double electrical_usage(const env::EnvironmentConfig& env, const std::string& service, const ActionMap& actions) {
  auto get = [&](const char* a) {
    auto it = actions.find(a);
    if (it == actions.end()) throw ContractError(std::string("actions lack actuator '") + a + "'");
    return it->second;
  };
  if (service == "light") return get("lp") / env.light.lamp_levels.back();
  if (service == "temp") {
    const double cap = env.thermal.max_step_duration_h;
    return std::abs(get("ac")) * std::min(get("act"), cap) / cap;
  }
  if (service == "air") {
    const double cap = env.air.max_step_duration_h;
    return get("ap") / env.air.purifier_levels.back() * std::min(get("apt"), cap) / cap;
  }
  throw ConfigError("unknown service '" + service + "'");
}

HomeSystem::HomeSystem(HomeConfig config, SystemVariant variant, std::uint64_t seed)
    : config_(std::move(config)),
      variant_(variant),
      store_(config_.existing_rules),
      inhabitant_rng_(Rng::derive(seed, "inhabitant")),
      light_rng_(Rng::derive(seed, "outdoor_light")),
      air_rng_(Rng::derive(seed, "outdoor_air")),
      explore_rng_(Rng::derive(seed, "exploration")),
      random_rng_(Rng::derive(seed, "random_policy")) {
  config_.validate();
  reward_ = config_.reward;
  reward_.constraint_enabled = variant_.constraint;
  preferences_ = config_.env.preferences;
  clock_.minutes_per_step = config_.env.minutes_per_step;
  services_ = make_service_specs(config_);

  for (const auto& s : services_) {
    auto& ranges = corr_ranges_[s.id];
    for (const auto& in : s.inputs) {
      if (config_.scaled_correlation) ranges.push_back({in.min, in.max});
      if (in.categorical()) continue;
      generalize_.tolerance[in.name] = config_.merge_tolerance_fraction * (in.max - in.min);
    }
    for (const auto& a : s.actuators)
      if (std::none_of(actuators_.begin(), actuators_.end(), [&](const Actuator& x) { return x.name == a.name; }))
        actuators_.push_back(a);
  }

  if (variant_.uses_learner()) {
    shoma_ = std::make_unique<agents::Shoma>(services_, variant_.arrangement, config_.agent, seed);
    controlled_ = shoma_->agent_specs();
  } else {
    controlled_ = services_;
  }

  lr_ = config_.env.initial_lr;
  tr_ = config_.env.initial_tr;
  ar_ = config_.env.initial_ar;
  for (const auto& a : actuators_) actuator_state_[a.name] = initial_level(a);
}

double HomeSystem::indoor(const std::string& state) const {
  if (state == "lr") return lr_;
  if (state == "tr") return tr_;
  if (state == "ar") return ar_;
  throw ContractError("unknown indoor state '" + state + "'");
}

Observation HomeSystem::observe(std::size_t us, double le, double te, double ae) const {
  Observation o{{"us", static_cast<double>(us)}, {"le", le}, {"te", te}, {"ae", ae},
                {"lr", lr_}, {"tr", tr_}, {"ar", ar_}};
  for (const auto& a : actuators_) o.set(a.name, actuator_state_.at(a.name));
  return o;
}

std::map<std::string, std::vector<double>> HomeSystem::service_inputs(const Observation& o) const {
  std::map<std::string, std::vector<double>> out;
  for (const auto& s : services_) out[s.id] = o.select(s.input_names());
  return out;
}

MechanismProposals HomeSystem::extracted_proposals(const std::map<std::string, std::vector<double>>& inputs) const {
  MechanismProposals m;
  for (const auto& spec : controlled_) {
    const auto inference = rules::extracted_infer(store_.extracted(spec.id), inputs.at(spec.id), config_.corr_epsilon,
                                                  corr_ranges_.at(spec.id));
    if (!inference) continue;
    for (const auto& [actuator, level] : inference->conclusions) {
      if (m.conflicts.count(actuator)) continue;
      auto it = m.levels.find(actuator);
      if (it != m.levels.end() && it->second != level) {
        m.conflicts.insert(actuator);
        m.levels.erase(it);
        m.rule_ids.erase(actuator);
        continue;
      }
      m.levels[actuator] = level;
      m.rule_ids[actuator].push_back(inference->rule_id);
    }
  }
  return m;
}

ActionMap HomeSystem::random_proposals() {
  ActionMap m;
  for (const auto& a : actuators_) m[a.name] = a.levels[random_rng_.uniform_index(a.size())];
  return m;
}

void HomeSystem::apply(const ActionMap& actions, std::size_t us, double le, double te, double ae,
                       std::map<std::string, double>& outcomes) {
  const auto& e = config_.env;
  for (const auto& s : services_) {
    if (s.id == "light") {
      lr_ = env::step_light(e.light, actions.at("lp"), actions.at("cur"), le);
      outcomes["light"] = lr_;
    } else if (s.id == "temp") {
      const env::ThermalActuation a{actions.at("ac"), actions.at("act"), actions.at("win"), actions.at("wct"),
                                    actions.at("cur")};
      tr_ = env::step_temperature(e.thermal, tr_, te, a);
      outcomes["temp"] = tr_;
    } else if (s.id == "air") {
      const env::AirActuation a{actions.at("ap"), actions.at("apt"), actions.at("win"), actions.at("wct")};
      ar_ = env::step_air(e.air, ar_, ae, a, e.inhabitant.breathing(us));
      outcomes["air"] = ar_;
    }
  }
  for (const auto& [name, level] : actions) actuator_state_[name] = level;
}

StepRecord HomeSystem::step() {
  StepRecord rec;
  const std::uint64_t t = clock_.step_index;
  rec.step = t;
  rec.hour = clock_.hour();

  // Observe.
  const std::size_t us = env::gen_inhabitant_state(inhabitant_rng_, config_.env.inhabitant.n_states());
  const double le = env::outdoor_light(config_.env.light, rec.hour, light_rng_);
  const double te = env::outdoor_temp(config_.env.thermal, rec.hour);
  const double ae = env::outdoor_air(config_.env.air, rec.hour, air_rng_);
  rec.inhabitant_state = us;
  rec.observation = observe(us, le, te, ae);
  const auto inputs = service_inputs(rec.observation);

  // Delayed rewards, rule management and learning for step t-1.
  if (pending_) {
    std::map<std::string, double> rewards;
    for (const auto& s : services_)
      rewards[s.id] = env::reward(pending_->outcomes.at(s.id), preferences_.target(s.id, pending_->inhabitant_state),
                                  pending_->usage.at(s.id), reward_);
    rec.rewards = rewards;

    if (variant_.uses_extracted()) {
      auto triggered = apply_rule_triggers(rewards, *pending_, controlled_, store_, generalize_, t);
      rec.events = std::move(triggered.events);
      rec.warnings = std::move(triggered.warnings);
    }

    if (shoma_) {
      for (const auto& spec : shoma_->agent_specs()) {
        agents::Transition tr;
        tr.observation = pending_->observations.at(spec.id);
        for (const auto& a : spec.actuators) tr.action.push_back(a.index_of(pending_->decision.level(a.name)));
        tr.outcome = pending_->outcomes.at(spec.id);
        tr.next_observation = inputs.at(spec.id);
        tr.reward = rewards.at(spec.id);
        auto& agent = shoma_->agent(spec.id);
        agent.record(std::move(tr));
        if (auto loss = agent.train_step()) rec.losses[spec.id] = *loss;
      }
    }
  }

  for (const auto& c : config_.target_changes)
    if (c.step == t) preferences_.set(c.service, c.inhabitant_state, c.target);

  // Proposals from each enabled mechanism.
  if (variant_.uses_existing()) {
    const auto match = rules::existing_match(store_.existing(), rec.observation);
    rec.existing.levels = match.levels;
    rec.existing.conflicts = match.conflicts;
    for (const auto& [actuator, id] : match.rule_of) rec.existing.rule_ids[actuator] = {id};
  }
  if (variant_.uses_extracted()) rec.extracted = extracted_proposals(inputs);

  Source learner_source = Source::learner;
  if (shoma_) {
    rec.epsilon = config_.agent.epsilon_at(t);
    rec.learner = shoma_->propose(inputs, rec.epsilon, explore_rng_).levels;
  } else {
    rec.epsilon = 1.0;
    rec.learner = random_proposals();
    learner_source = Source::random;
  }

  rec.decision = decide(rec.existing, rec.extracted, rec.learner, learner_source);

  // Act and let the home evolve.
  const ActionMap actions = rec.decision.levels();
  apply(actions, us, le, te, ae, rec.outcomes);

  PendingLedger ledger;
  ledger.step = t;
  ledger.inhabitant_state = us;
  ledger.observations = inputs;
  ledger.decision = rec.decision;
  ledger.outcomes = rec.outcomes;
  for (const auto& s : services_) ledger.usage[s.id] = electrical_usage(config_.env, s.id, actions);
  pending_ = std::move(ledger);

  clock_.advance();
  return rec;
}

std::vector<StepRecord> HomeSystem::run(std::uint64_t steps) {
  std::vector<StepRecord> out;
  out.reserve(steps);
  for (std::uint64_t i = 0; i < steps; ++i) out.push_back(step());
  return out;
}

}  // namespace hkdsho::orchestrator
