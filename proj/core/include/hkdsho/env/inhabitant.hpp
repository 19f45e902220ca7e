#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hkdsho/common/random.hpp"
#include "hkdsho/common/types.hpp"

namespace hkdsho::env {

/// Uniform inhabitant state in [0, n_states). Throws ConfigError for n_states == 0.
std::size_t gen_inhabitant_state(Rng& rng, std::size_t n_states);

struct InhabitantModel {
  std::vector<std::string> state_labels{"absent", "sleeping", "sitting", "active"};
  /// CO2 emission rate per state, mg/s.
  std::vector<double> breathing_mg_s{0.0, 7.6635, 11.004, 31.44};
  /// Exhaled-air volume (m^3/min) per mg/s of CO2 emission.
  double breathing_conversion = 8.57e-4;

  std::size_t n_states() const { return state_labels.size(); }
  /// Exhaled-air rate (m^3/min) for a state.
  double breathing(std::size_t state) const;
  /// Index of a state label; throws ConfigError if unknown.
  std::size_t state_index(const std::string& label) const;
  void validate() const;
};

/// Target interval of each service's monitored state, per inhabitant state.
class PreferenceTable {
 public:
  void set(const std::string& service, std::size_t state, Interval target);
  /// Throws ConfigError for an unregistered service, ContractError for a bad state.
  const Interval& target(const std::string& service, std::size_t state) const;
  bool registered(const std::string& service) const { return table_.count(service) != 0; }
  const std::map<std::string, std::vector<Interval>>& table() const { return table_; }
  /// Every registered service covers exactly `n_states` non-empty intervals.
  void validate(std::size_t n_states) const;

 private:
  std::map<std::string, std::vector<Interval>> table_;
};

/// Defaults shipped with the project.
PreferenceTable default_preferences();

}  // namespace hkdsho::env
