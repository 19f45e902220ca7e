#pragma once

#include "hkdsho/common/random.hpp"
#include "hkdsho/env/params.hpp"

namespace hkdsho::env {

double outdoor_light(const LightParams& p, double hour, double noise_u);
double outdoor_light(const LightParams& p, double hour, Rng& rng);

double outdoor_temp(const ThermalParams& p, double hour);

double outdoor_air(const AirParams& p, double hour, double noise_u);
double outdoor_air(const AirParams& p, double hour, Rng& rng);

/// Indoor light after one step: beta * lamp + outdoor * curtain.
double step_light(const LightParams& p, double lamp, double curtain, double outdoor_lux);

struct ThermalActuation {
  double ac = 0;   // 0 off, 1 heat, -1 cool
  double act = 0;  // AC working hours
  double win = 0;
  double wct = 0;  // window/curtain working hours
  double cur = 0;
};

double step_temperature(const ThermalParams& p, double indoor, double outdoor,
                        const ThermalActuation& a);

struct AirActuation {
  double ap = 0;   // purifier flow, m^3/h
  double apt = 0;  // purifier working hours
  double win = 0;
  double wct = 0;
};

/// Per-step mixing weights of the indoor CO2 balance.
///
/// next = retained * indoor + ventilation * outdoor + exhalation * exhaled,
/// with retained = 1 - (purification + ventilation + exhalation) clamped to
/// [0, 1]. The purifier mixes in CO2-free air.
struct AirCoefficients {
  double purification = 0;
  double ventilation = 0;
  double exhalation = 0;
  double retained = 1;
  bool clamped = false;
};

/// `breathing` is the exhaled-air rate in m^3/min for one occupant.
AirCoefficients air_coefficients(const AirParams& p, const AirActuation& a, double breathing);

double step_air(const AirParams& p, double indoor, double outdoor, const AirActuation& a,
                double breathing);

}  // namespace hkdsho::env
