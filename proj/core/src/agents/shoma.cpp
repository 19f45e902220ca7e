#include "hkdsho/agents/shoma.hpp"

#include <algorithm>
#include <cctype>

#include "hkdsho/agents/policy.hpp"
#include "hkdsho/common/errors.hpp"

namespace hkdsho::agents {

std::string to_string(Arrangement a) { return a == Arrangement::epba ? "EPbA" : "RSAbA"; }

Arrangement arrangement_from_string(const std::string& s) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "epba") return Arrangement::epba;
  if (lower == "rsaba") return Arrangement::rsaba;
  throw ConfigError("unknown arrangement '" + s + "' (expected EPbA or RSAbA)");
}

Shoma::Shoma(const std::vector<ServiceSpec>& services, Arrangement arrangement, const AgentConfig& config,
             std::uint64_t seed)
    : arrangement_(arrangement) {
  if (services.empty()) throw ConfigError("at least one service is required");
  std::map<std::string, std::string> owner;
  if (arrangement == Arrangement::rsaba) owner = assign_actuators_rsaba(services);

  for (const auto& s : services) {
    ServiceSpec spec = s;
    if (arrangement == Arrangement::rsaba) {
      std::erase_if(spec.actuators, [&](const Actuator& a) { return owner.at(a.name) != s.id; });
      if (spec.actuators.empty()) throw ConfigError("service '" + s.id + "' owns no actuator under RSAbA");
    }
    specs_.push_back(spec);
  }
  agents_.reserve(specs_.size());
  for (const auto& spec : specs_) agents_.emplace_back(spec, config, seed);

  for (const auto& spec : specs_) {
    for (const auto& a : spec.actuators) {
      auto it = std::find_if(controllers_.begin(), controllers_.end(), [&](const auto& c) { return c.first == a.name; });
      if (it == controllers_.end()) {
        controllers_.push_back({a.name, {spec.id}});
      } else {
        it->second.push_back(spec.id);
      }
    }
  }
}

const ServiceSpec& Shoma::agent_spec(const std::string& service) const { return agent(service).spec(); }

DqnAgent& Shoma::agent(const std::string& service) {
  for (auto& a : agents_)
    if (a.spec().id == service) return a;
  throw NotFoundError("no agent for service '" + service + "'");
}

const DqnAgent& Shoma::agent(const std::string& service) const {
  for (const auto& a : agents_)
    if (a.spec().id == service) return a;
  throw NotFoundError("no agent for service '" + service + "'");
}

Shoma::Proposal Shoma::propose(const std::map<std::string, std::vector<double>>& observations, double epsilon,
                               Rng& rng) const {
  Proposal p;
  for (const auto& a : agents_) {
    auto it = observations.find(a.spec().id);
    if (it == observations.end()) throw ContractError("missing observation for service '" + a.spec().id + "'");
    p.q.emplace(a.spec().id, a.propose_q(it->second));
  }
  for (const auto& [actuator, services] : controllers_) {
    std::vector<std::vector<double>> lists;
    for (const auto& s : services) lists.push_back(p.q.at(s).at(actuator));
    const auto combined = combine_shared_vfap(lists);
    const auto idx = select_action(combined, epsilon, rng);
    p.levels[actuator] = agent(services.front()).spec().find_actuator(actuator)->levels[idx];
  }
  return p;
}

}  // namespace hkdsho::agents
