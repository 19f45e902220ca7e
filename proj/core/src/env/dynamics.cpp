#include "hkdsho/env/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::env {

namespace {

void require_level(const std::vector<double>& set, double v, const char* what) {
  if (std::find(set.begin(), set.end(), v) == set.end())
    throw InvalidActionError(std::string(what) + " level " + std::to_string(v) + " out of domain");
}

void require_increasing(const std::vector<double>& set, const char* what) {
  if (set.empty()) throw ConfigError(std::string(what) + " level set is empty");
  for (std::size_t i = 1; i < set.size(); ++i)
    if (!(set[i] > set[i - 1])) throw ConfigError(std::string(what) + " level set not strictly increasing");
}

void require_distinct(const std::vector<double>& set, const char* what) {
  if (set.empty()) throw ConfigError(std::string(what) + " level set is empty");
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j]) throw ConfigError(std::string(what) + " level set has duplicates");
}

void require_durations(const std::vector<double>& set) {
  require_increasing(set, "duration");
  if (set.front() < 0) throw ConfigError("duration levels must be >= 0");
}

}  // namespace

std::vector<double> default_duration_levels() {
  std::vector<double> out;
  out.reserve(51);
  for (int i = 0; i <= 50; ++i) out.push_back(i / 10.0);
  return out;
}

double SimClock::hour() const {
  const double minutes = static_cast<double>(step_index) * minutes_per_step;
  return std::fmod(minutes / 60.0, 24.0);
}

void LightParams::validate() const {
  if (!(beta > 0)) throw ConfigError("light: beta must be > 0");
  require_increasing(lamp_levels, "lamp");
  require_increasing(curtain_levels, "curtain");
  if (lamp_levels.front() < 0 || curtain_levels.front() < 0 || curtain_levels.back() > 1)
    throw ConfigError("light: lamp levels must be >= 0 and curtain levels within [0, 1]");
  if (!(gauss_stddev > 0) || gauss_amplitude < 0 || noise_scale < 0)
    throw ConfigError("light: outdoor model parameters out of range");
}

void ThermalParams::validate() const {
  if (!(cp > 0 && rho > 0 && volume > 0 && ac_power_coeff > 0 && loss_coeff > 0))
    throw ConfigError("thermal: Cp, rho, V, ac_power_coeff and loss_coeff must be > 0");
  require_distinct(ac_levels, "ac");
  for (double v : ac_levels)
    if (v != 0 && v != 1 && v != -1) throw ConfigError("thermal: ac levels must be within {-1, 0, 1}");
  require_increasing(window_levels, "window");
  require_increasing(curtain_levels, "curtain");
  require_durations(duration_levels);
  if (!(max_step_duration_h > 0)) throw ConfigError("thermal: step duration cap must be > 0");
}

void AirParams::validate() const {
  if (!(volume > 0)) throw ConfigError("air: V must be > 0");
  require_increasing(purifier_levels, "purifier");
  if (purifier_levels.front() < 0) throw ConfigError("air: purifier rates must be >= 0");
  require_increasing(window_levels, "window");
  require_durations(duration_levels);
  if (exchange_rate < 0 || exhaled_co2_ppm < 0 || occupants < 0 || breathing_minutes < 0)
    throw ConfigError("air: rates must be >= 0");
  if (outdoor_base - outdoor_amplitude <= 0 || outdoor_amplitude < 0 || outdoor_noise < 0)
    throw ConfigError("air: outdoor CO2 model must stay positive");
  if (!(max_step_duration_h > 0)) throw ConfigError("air: step duration cap must be > 0");
}

double outdoor_light(const LightParams& p, double hour, double noise_u) {
  const double z = (hour - p.gauss_mean) / p.gauss_stddev;
  return p.gauss_amplitude * std::exp(-0.5 * z * z) + p.noise_scale * noise_u;
}

double outdoor_light(const LightParams& p, double hour, Rng& rng) {
  return outdoor_light(p, hour, rng.uniform());
}

double outdoor_temp(const ThermalParams& p, double hour) {
  return p.A * std::cos(p.B * (hour - p.D)) + p.C;
}

double outdoor_air(const AirParams& p, double hour, double noise_u) {
  return p.outdoor_base + p.outdoor_amplitude * std::sin(2.0 * std::numbers::pi * hour / 24.0) +
         p.outdoor_noise * noise_u;
}

double outdoor_air(const AirParams& p, double hour, Rng& rng) {
  return outdoor_air(p, hour, rng.uniform());
}

double step_light(const LightParams& p, double lamp, double curtain, double outdoor_lux) {
  require_level(p.lamp_levels, lamp, "lamp");
  require_level(p.curtain_levels, curtain, "curtain");
  if (outdoor_lux < 0) throw InvalidActionError("outdoor light must be >= 0");
  return p.beta * lamp + outdoor_lux * curtain;
}

double step_temperature(const ThermalParams& p, double indoor, double outdoor,
                        const ThermalActuation& a) {
  require_level(p.ac_levels, a.ac, "ac");
  require_level(p.duration_levels, a.act, "ac duration");
  require_level(p.window_levels, a.win, "window");
  require_level(p.duration_levels, a.wct, "window duration");
  require_level(p.curtain_levels, a.cur, "curtain");

  const double act = std::min(a.act, p.max_step_duration_h);
  const double wct = std::min(a.wct, p.max_step_duration_h);
  const double capacity = p.heat_capacity();
  const double q_ac = p.ac_power_coeff * act * std::abs(a.ac);
  const double q_loss = p.loss_coeff * a.win * wct * 3600.0 * (outdoor - indoor);
  const double sign = (a.ac > 0) - (a.ac < 0);
  return indoor + sign * q_ac / capacity + q_loss / capacity;
}

AirCoefficients air_coefficients(const AirParams& p, const AirActuation& a, double breathing) {
  require_level(p.purifier_levels, a.ap, "purifier");
  require_level(p.duration_levels, a.apt, "purifier duration");
  require_level(p.window_levels, a.win, "window");
  require_level(p.duration_levels, a.wct, "window duration");
  if (breathing < 0) throw InvalidActionError("breathing rate must be >= 0");

  const double apt = std::min(a.apt, p.max_step_duration_h);
  const double wct = std::min(a.wct, p.max_step_duration_h);
  AirCoefficients c;
  c.purification = a.ap * apt / p.volume;
  c.ventilation = p.exchange_rate * a.win * wct / p.volume;
  c.exhalation = p.occupants * breathing * p.breathing_minutes / p.volume;
  const double removal = c.purification + c.ventilation + c.exhalation;
  c.clamped = removal > 1.0;
  c.retained = 1.0 - std::clamp(removal, 0.0, 1.0);
  return c;
}

double step_air(const AirParams& p, double indoor, double outdoor, const AirActuation& a,
                double breathing) {
  const AirCoefficients c = air_coefficients(p, a, breathing);
  return indoor * c.retained + outdoor * c.ventilation + p.exhaled_co2_ppm * c.exhalation;
}

}  // namespace hkdsho::env
