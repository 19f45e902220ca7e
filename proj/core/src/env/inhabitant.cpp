#include "hkdsho/env/inhabitant.hpp"

#include <algorithm>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::env {

std::size_t gen_inhabitant_state(Rng& rng, std::size_t n_states) {
  if (n_states == 0) throw ConfigError("inhabitant model needs at least one state");
  return rng.uniform_index(n_states);
}

double InhabitantModel::breathing(std::size_t state) const {
  if (state >= breathing_mg_s.size()) throw ContractError("inhabitant state out of range");
  return breathing_mg_s[state] * breathing_conversion;
}

std::size_t InhabitantModel::state_index(const std::string& label) const {
  auto it = std::find(state_labels.begin(), state_labels.end(), label);
  if (it == state_labels.end()) throw ConfigError("unknown inhabitant state '" + label + "'");
  return static_cast<std::size_t>(it - state_labels.begin());
}

void InhabitantModel::validate() const {
  if (state_labels.empty()) throw ConfigError("inhabitant model needs at least one state");
  if (breathing_mg_s.size() != state_labels.size())
    throw ConfigError("breathing rates must list one entry per inhabitant state");
  for (double b : breathing_mg_s)
    if (b < 0) throw ConfigError("breathing rates must be >= 0");
  if (breathing_conversion < 0) throw ConfigError("breathing conversion must be >= 0");
}

void PreferenceTable::set(const std::string& service, std::size_t state, Interval target) {
  auto& row = table_[service];
  if (row.size() <= state) row.resize(state + 1, Interval{0, -1});
  row[state] = target;
}

const Interval& PreferenceTable::target(const std::string& service, std::size_t state) const {
  auto it = table_.find(service);
  if (it == table_.end()) throw ConfigError("no preferences registered for service '" + service + "'");
  if (state >= it->second.size()) throw ContractError("inhabitant state out of range");
  return it->second[state];
}

void PreferenceTable::validate(std::size_t n_states) const {
  for (const auto& [service, row] : table_) {
    if (row.size() != n_states)
      throw ConfigError("preferences for '" + service + "' must cover every inhabitant state");
    for (const auto& iv : row)
      if (!(iv.min < iv.max)) throw ConfigError("preference interval for '" + service + "' is empty");
  }
}

PreferenceTable default_preferences() {
  PreferenceTable t;
  // absent, sleeping, sitting, active
  const Interval light[] = {{0, 100}, {0, 50}, {300, 600}, {400, 800}};
  const Interval temp[] = {{14, 26}, {16, 19}, {19, 23}, {18, 21}};
  const Interval air[] = {{350, 1500}, {350, 1000}, {350, 800}, {350, 1000}};
  for (std::size_t s = 0; s < 4; ++s) {
    t.set("light", s, light[s]);
    t.set("temp", s, temp[s]);
    t.set("air", s, air[s]);
  }
  return t;
}

}  // namespace hkdsho::env
