#include "hkdsho/env/reward.hpp"

#include <algorithm>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::env {

void RewardConfig::validate() const {
  if (!(satisfied_reward > 0)) throw ConfigError("satisfied reward must be > 0");
  if (dissatisfied_reward > 0) throw ConfigError("dissatisfied reward must be <= 0");
  if (constraint_weight < 0) throw ConfigError("constraint weight must be >= 0");
  if (constraint_enabled && satisfied_reward - constraint_weight < 0)
    throw ConfigError("constraint weight would make a satisfied reward negative");
}

double reward(double monitored, const Interval& target, double usage, const RewardConfig& cfg) {
  if (!target.contains(monitored)) return cfg.dissatisfied_reward;
  const double penalty = cfg.constraint_enabled ? cfg.constraint_weight * std::clamp(usage, 0.0, 1.0) : 0.0;
  return cfg.satisfied_reward - penalty;
}

}  // namespace hkdsho::env
