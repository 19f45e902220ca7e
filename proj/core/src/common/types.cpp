#include "hkdsho/common/types.hpp"

#include <algorithm>

#include "hkdsho/common/errors.hpp"

namespace hkdsho {

Observation::Observation(std::initializer_list<std::pair<std::string, double>> readings) {
  for (const auto& [name, value] : readings) set(name, value);
}

void Observation::set(const std::string& name, double value) {
  for (auto& r : readings_) {
    if (r.first == name) {
      r.second = value;
      return;
    }
  }
  readings_.emplace_back(name, value);
}

std::optional<double> Observation::find(std::string_view name) const {
  for (const auto& r : readings_)
    if (r.first == name) return r.second;
  return std::nullopt;
}

double Observation::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ContractError("observation has no state '" + std::string(name) + "'");
}

std::vector<double> Observation::select(std::span<const std::string> names) const {
  std::vector<double> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(at(n));
  return out;
}

bool Actuator::contains(double level) const {
  return std::find(levels.begin(), levels.end(), level) != levels.end();
}

std::size_t Actuator::index_of(double level) const {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end())
    throw InvalidActionError("level " + std::to_string(level) + " not in level set of '" + name + "'");
  return static_cast<std::size_t>(it - levels.begin());
}

}  // namespace hkdsho
