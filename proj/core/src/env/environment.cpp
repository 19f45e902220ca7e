#include "hkdsho/env/environment.hpp"

#include <cmath>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::env {

const Interval& EnvironmentConfig::range(const std::string& state) const {
  auto it = ranges.find(state);
  if (it == ranges.end()) throw ConfigError("no physical range configured for '" + state + "'");
  return it->second;
}

void EnvironmentConfig::validate() const {
  if (minutes_per_step <= 0) throw ConfigError("minutes_per_step must be > 0");
  light.validate();
  thermal.validate();
  air.validate();
  inhabitant.validate();
  preferences.validate(inhabitant.n_states());
  if (air.breathing_minutes != minutes_per_step)
    throw ConfigError("breathing time per step must equal minutes_per_step");
  for (const auto& [state, r] : ranges)
    if (!(r.max > r.min)) throw ConfigError("physical range of '" + state + "' is empty");
  const std::map<std::string, std::string> monitored{{"light", "lr"}, {"temp", "tr"}, {"air", "ar"}};
  for (const auto& [service, row] : preferences.table()) {
    auto m = monitored.find(service);
    if (m == monitored.end()) throw ConfigError("preferences given for unknown service '" + service + "'");
    const Interval& phys = range(m->second);
    for (const auto& iv : row)
      if (iv.min < phys.min || iv.max > phys.max)
        throw ConfigError("preference for '" + service + "' lies outside the physical range of " + m->second);
  }
  for (const char* s : {"lr", "tr", "ar"}) {
    const double v = std::string(s) == "lr" ? initial_lr : std::string(s) == "tr" ? initial_tr : initial_ar;
    if (!range(s).contains(v)) throw ConfigError(std::string("initial ") + s + " lies outside its physical range");
  }
  for (double d : thermal.duration_levels)
    if (d > 24.0) throw ConfigError("duration levels must not exceed a day");
}

}  // namespace hkdsho::env
