#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hkdsho/agents/dqn_agent.hpp"
#include "hkdsho/agents/shoma.hpp"
#include "hkdsho/common/random.hpp"
#include "hkdsho/env/environment.hpp"
#include "hkdsho/env/reward.hpp"
#include "hkdsho/orchestrator/records.hpp"
#include "hkdsho/orchestrator/triggers.hpp"
#include "hkdsho/rules/store.hpp"

namespace hkdsho::orchestrator {

enum class Variant { random, shoma_only, no_extracted, no_existing, full };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct SystemVariant {
  Variant variant = Variant::full;
  agents::Arrangement arrangement = agents::Arrangement::epba;
  bool constraint = false;

  bool uses_learner() const { return variant != Variant::random; }
  bool uses_existing() const { return variant == Variant::no_extracted || variant == Variant::full; }
  bool uses_extracted() const { return variant == Variant::no_existing || variant == Variant::full; }
};

/// Inhabitant-set target for one service and inhabitant state, effective from `step`.
struct TargetChange {
  std::uint64_t step = 0;
  std::string service;
  std::size_t inhabitant_state = 0;
  Interval target;
};

struct HomeConfig {
  env::EnvironmentConfig env;
  std::vector<std::string> services{"temp", "air"};
  std::map<std::string, int> complexity{{"light", 1}, {"temp", 2}, {"air", 3}};
  agents::AgentConfig agent;
  env::RewardConfig reward;
  /// Generalization widening as a fraction of each state's physical range.
  double merge_tolerance_fraction = 0.05;
  double corr_epsilon = 0.01;
  /// Min-max scale states by their physical range before rule correlation.
  bool scaled_correlation = false;
  std::vector<rules::ExistingRule> existing_rules;
  std::vector<TargetChange> target_changes;

  void validate() const;
};

/// Service definitions (inputs, actuators, ranks) for the requested ids.
std::vector<agents::ServiceSpec> make_service_specs(const HomeConfig& config);

/// Electrical usage in [0, 1] of one service's electrical actuators.
double electrical_usage(const env::EnvironmentConfig& env, const std::string& service, const ActionMap& actions);

/// One simulated home running one system variant.
class HomeSystem {
 public:
  HomeSystem(HomeConfig config, SystemVariant variant, std::uint64_t seed);

  /// Runs one full working-process iteration and returns its record.
  StepRecord step();
  std::vector<StepRecord> run(std::uint64_t steps);

  const SystemVariant& variant() const { return variant_; }
  const env::SimClock& clock() const { return clock_; }
  const rules::RuleStore& rules() const { return store_; }
  rules::RuleStore& rules() { return store_; }
  const std::vector<agents::ServiceSpec>& services() const { return services_; }
  /// nullptr for the random variant.
  const agents::Shoma* learner() const { return shoma_.get(); }
  agents::Shoma* learner() { return shoma_.get(); }
  /// Every actuator any active service controls.
  const std::vector<agents::ServiceSpec>& controlled() const { return controlled_; }
  double indoor(const std::string& state) const;

 private:
  Observation observe(std::size_t us, double le, double te, double ae) const;
  std::map<std::string, std::vector<double>> service_inputs(const Observation& o) const;
  MechanismProposals extracted_proposals(const std::map<std::string, std::vector<double>>& inputs) const;
  ActionMap random_proposals();
  void apply(const ActionMap& actions, std::size_t us, double le, double te, double ae,
             std::map<std::string, double>& outcomes);

  HomeConfig config_;
  SystemVariant variant_;
  env::RewardConfig reward_;
  env::PreferenceTable preferences_;
  rules::GeneralizeOptions generalize_;
  std::vector<agents::ServiceSpec> services_;
  std::vector<agents::ServiceSpec> controlled_;
  std::vector<Actuator> actuators_;
  std::map<std::string, std::vector<Interval>> corr_ranges_;  // per service, empty when unscaled
  std::unique_ptr<agents::Shoma> shoma_;
  rules::RuleStore store_;
  env::SimClock clock_;
  Rng inhabitant_rng_, light_rng_, air_rng_, explore_rng_, random_rng_;
  double lr_, tr_, ar_;
  ActionMap actuator_state_;
  std::optional<PendingLedger> pending_;
};

}  // namespace hkdsho::orchestrator
