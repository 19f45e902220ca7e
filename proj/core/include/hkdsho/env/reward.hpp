#pragma once

#include "hkdsho/common/types.hpp"

namespace hkdsho::env {

struct RewardConfig {
  double satisfied_reward = 1.0;
  double dissatisfied_reward = -1.0;
  bool constraint_enabled = false;
  /// Penalty per unit of normalized electrical usage; < 1 keeps satisfied rewards positive.
  double constraint_weight = 0.5;

  void validate() const;
};

/// Satisfaction reward for one service.
///
/// Inside the target: satisfied_reward minus the usage penalty when the
/// constraint is on. Outside: dissatisfied_reward. `usage` is in [0, 1].
double reward(double monitored, const Interval& target, double usage, const RewardConfig& cfg);

}  // namespace hkdsho::env
