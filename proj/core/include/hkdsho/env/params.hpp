#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

namespace hkdsho::env {

/// {0.0, 0.1, ..., 5.0} hours.
std::vector<double> default_duration_levels();

struct SimClock {
  std::uint64_t step_index = 0;
  int minutes_per_step = 5;

  /// Time of day in hours, [0, 24).
  double hour() const;
  double step_hours() const { return minutes_per_step / 60.0; }
  void advance() { ++step_index; }
};

struct LightParams {
  double beta = 100.0;  // lux per lamp level
  std::vector<double> lamp_levels{0, 1, 2, 3, 4};
  std::vector<double> curtain_levels{0, 0.5, 1};
  double gauss_amplitude = 600.0;
  double gauss_mean = 12.0;
  double gauss_stddev = 3.0;
  double noise_scale = 5.0;

  void validate() const;
};

/// Outdoor temperature curve plus the room's heat balance.
///
/// AC energy is `ac_power_coeff * act` Joules; window loss is
/// `loss_coeff * win * wct * 3600 * (te - tr)` Joules. Durations are capped at
/// `max_step_duration_h` inside one step.
struct ThermalParams {
  double A = -7.0;
  double B = std::numbers::pi / 12.0;
  double C = 19.0;
  double D = 4.0;
  double cp = 1005.0;     // J/(kg K)
  double rho = 1.2;       // kg/m^3
  double volume = 50.0;   // m^3
  std::vector<double> ac_levels{0, -1, 1};
  std::vector<double> window_levels{0, 1};
  std::vector<double> curtain_levels{0, 0.5, 1};
  std::vector<double> duration_levels = default_duration_levels();
  double ac_power_coeff = 2170800.0;  // J per operating hour
  double loss_coeff = 50.25;          // W/K
  double max_step_duration_h = 5.0 / 60.0;

  double heat_capacity() const { return cp * rho * volume; }
  void validate() const;
};

struct AirParams {
  double volume = 50.0;  // m^3
  std::vector<double> purifier_levels{0, 60, 170, 280, 390, 500};  // m^3/h
  std::vector<double> window_levels{0, 1};
  std::vector<double> duration_levels = default_duration_levels();
  double exchange_rate = 300.0;     // L, m^3/h through an open window
  double exhaled_co2_ppm = 38000.0;
  int occupants = 1;
  double breathing_minutes = 5.0;  // delta_x, equals the step length
  double outdoor_base = 410.0;
  double outdoor_amplitude = 10.0;
  double outdoor_noise = 2.0;
  double max_step_duration_h = 5.0 / 60.0;

  void validate() const;
};

}  // namespace hkdsho::env
