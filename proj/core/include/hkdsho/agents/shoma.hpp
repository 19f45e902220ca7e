#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkdsho/agents/dqn_agent.hpp"
#include "hkdsho/common/random.hpp"
#include "hkdsho/common/types.hpp"

namespace hkdsho::agents {

enum class Arrangement { epba, rsaba };

std::string to_string(Arrangement a);
/// "EPbA" / "RSAbA", case-insensitive. Throws ConfigError otherwise.
Arrangement arrangement_from_string(const std::string& s);

/// The multi-service learner: one deep Q agent per service, with shared
/// actuators resolved either by Q summation (EPbA) or by exclusive ownership
/// (RSAbA).
class Shoma {
 public:
  struct Proposal {
    ActionMap levels;
    std::map<std::string, QOutput> q;  // per service
  };

  Shoma(const std::vector<ServiceSpec>& services, Arrangement arrangement, const AgentConfig& config,
        std::uint64_t seed);

  Arrangement arrangement() const { return arrangement_; }

  /// Agent specs as trained. Under RSAbA each service keeps only the actuators it owns.
  const std::vector<ServiceSpec>& agent_specs() const { return specs_; }
  const ServiceSpec& agent_spec(const std::string& service) const;

  /// Actuators in proposal order, each with the services that control it.
  const std::vector<std::pair<std::string, std::vector<std::string>>>& controllers() const { return controllers_; }

  /// `observations` maps service id to its raw input vector.
  Proposal propose(const std::map<std::string, std::vector<double>>& observations, double epsilon, Rng& rng) const;

  DqnAgent& agent(const std::string& service);
  const DqnAgent& agent(const std::string& service) const;

 private:
  Arrangement arrangement_;
  std::vector<ServiceSpec> specs_;
  std::vector<DqnAgent> agents_;
  std::vector<std::pair<std::string, std::vector<std::string>>> controllers_;
};

}  // namespace hkdsho::agents
