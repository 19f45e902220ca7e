#pragma once

#include <map>
#include <string>

#include "hkdsho/common/types.hpp"
#include "hkdsho/env/inhabitant.hpp"
#include "hkdsho/env/params.hpp"

namespace hkdsho::env {

/// Everything the simulated home needs: physics, inhabitant, preferences,
/// initial indoor values and the physical range of every state.
struct EnvironmentConfig {
  int minutes_per_step = 5;
  LightParams light;
  ThermalParams thermal;
  AirParams air;
  InhabitantModel inhabitant;
  PreferenceTable preferences = default_preferences();
  double initial_lr = 0.0;
  double initial_tr = 20.0;
  double initial_ar = 600.0;
  /// Physical range per continuous state (le, te, ae, lr, tr, ar).
  std::map<std::string, Interval> ranges{
      {"le", {0, 605}}, {"te", {5, 35}}, {"ae", {380, 440}},
      {"lr", {0, 1100}}, {"tr", {5, 35}}, {"ar", {0, 2000}}};

  const Interval& range(const std::string& state) const;
  /// Checks every parameter block, keeps per-step constants consistent, and
  /// rejects preferences outside the physical ranges.
  void validate() const;
};

}  // namespace hkdsho::env
