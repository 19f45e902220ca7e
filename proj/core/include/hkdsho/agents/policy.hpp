#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hkdsho/agents/dqn_agent.hpp"
#include "hkdsho/agents/service_spec.hpp"
#include "hkdsho/common/random.hpp"

namespace hkdsho::agents {

/// Index of the maximum; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> q);

/// Epsilon-greedy choice over one Q vector. Always consumes one uniform draw,
/// plus one index draw when exploring.
std::size_t select_action(std::span<const double> q, double epsilon, Rng& rng);

/// Independent epsilon-greedy choice per actuator, in QOutput order.
std::vector<std::size_t> select_actions(const QOutput& q, double epsilon, Rng& rng);

/// Value function addition: elementwise sum of every sharing service's Q vector.
std::vector<double> combine_shared_vfap(std::span<const std::vector<double>> q_lists);

/// Actuator -> owning service. Shared actuators go to the sharing service
/// with the lowest complexity rank; duplicate ranks are a ConfigError.
std::map<std::string, std::string> assign_actuators_rsaba(std::span<const ServiceSpec> services);

}  // namespace hkdsho::agents
