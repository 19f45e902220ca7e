#include "hkdsho/agents/policy.hpp"

#include <set>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::agents {

std::size_t argmax_lowest(std::span<const double> q) {
  if (q.empty()) throw ContractError("empty Q vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[i] > q[best]) best = i;
  return best;
}

std::size_t select_action(std::span<const double> q, double epsilon, Rng& rng) {
  if (q.empty()) throw ContractError("empty Q vector");
  if (!(epsilon >= 0 && epsilon <= 1)) throw ContractError("epsilon must lie in [0, 1]");
  if (rng.uniform() >= epsilon) return argmax_lowest(q);
  return rng.uniform_index(q.size());
}

std::vector<std::size_t> select_actions(const QOutput& q, double epsilon, Rng& rng) {
  std::vector<std::size_t> out;
  out.reserve(q.values.size());
  for (const auto& v : q.values) out.push_back(select_action(v, epsilon, rng));
  return out;
}

std::vector<double> combine_shared_vfap(std::span<const std::vector<double>> q_lists) {
  if (q_lists.empty()) throw ContractError("no Q vectors to combine");
  std::vector<double> sum(q_lists.front().size(), 0.0);
  for (const auto& q : q_lists) {
    if (q.size() != sum.size()) throw ContractError("shared actuator Q vectors differ in length");
    for (std::size_t i = 0; i < q.size(); ++i) sum[i] += q[i];
  }
  return sum;
}

std::map<std::string, std::string> assign_actuators_rsaba(std::span<const ServiceSpec> services) {
  std::set<int> ranks;
  for (const auto& s : services)
    if (!ranks.insert(s.complexity).second)
      throw ConfigError("services must have distinct complexity ranks (duplicate " + std::to_string(s.complexity) + ")");

  std::map<std::string, std::string> owner;
  std::map<std::string, int> owner_rank;
  for (const auto& s : services) {
    for (const auto& a : s.actuators) {
      auto it = owner_rank.find(a.name);
      if (it == owner_rank.end() || s.complexity < it->second) {
        owner[a.name] = s.id;
        owner_rank[a.name] = s.complexity;
      }
    }
  }
  return owner;
}

}  // namespace hkdsho::agents
