#include <gtest/gtest.h>

#include <cmath>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/env/dynamics.hpp"
#include "hkdsho/env/environment.hpp"
#include "hkdsho/env/inhabitant.hpp"
#include "hkdsho/env/reward.hpp"
#include "oracles.hpp"

using namespace hkdsho;
using namespace hkdsho::env;

TEST(Inhabitant, SingleStateAlwaysZero) {
  Rng r(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(gen_inhabitant_state(r, 1), 0u);
}

TEST(Inhabitant, FourStatesUniform) {
  Rng r(5);
  std::vector<int> hist(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++hist[gen_inhabitant_state(r, 4)];
  for (int h : hist) EXPECT_NEAR(h / double(n), 0.25, 0.01);
}

TEST(Inhabitant, ZeroStatesRejected) {
  Rng r(1);
  EXPECT_THROW(gen_inhabitant_state(r, 0), ConfigError);
}

TEST(Inhabitant, SameSeedSameSequence) {
  Rng a(11), b(11);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(gen_inhabitant_state(a, 4), gen_inhabitant_state(b, 4));
}

TEST(OutdoorLight, PaperValues) {
  LightParams p;
  EXPECT_DOUBLE_EQ(outdoor_light(p, 12, 0.0), 600.0);
  EXPECT_DOUBLE_EQ(outdoor_light(p, 12, 1.0), 605.0);
  EXPECT_NEAR(outdoor_light(p, 3, 0.0), 600 * std::exp(-4.5), 1e-12);
  EXPECT_NEAR(outdoor_light(p, 3, 0.0), 6.666, 1e-3);
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = outdoor_light(p, r.uniform() * 24, r);
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 605);
  }
}

TEST(OutdoorTemp, ClosedForm) {
  ThermalParams p;
  EXPECT_DOUBLE_EQ(outdoor_temp(p, 4), 12.0);
  EXPECT_DOUBLE_EQ(outdoor_temp(p, 16), 26.0);
  EXPECT_NEAR(outdoor_temp(p, 10), 19.0, 1e-12);
  for (double h = 0; h < 24; h += 0.37) EXPECT_NEAR(outdoor_temp(p, h), outdoor_temp(p, h + 24), 1e-12);
}

TEST(OutdoorAir, ConstantAndPeak) {
  AirParams p;
  p.outdoor_amplitude = 0;
  EXPECT_DOUBLE_EQ(outdoor_air(p, 7, 0.0), 410);
  p.outdoor_amplitude = 10;
  EXPECT_DOUBLE_EQ(outdoor_air(p, 6, 0.0), 420);
  Rng r(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = outdoor_air(p, r.uniform() * 24, r);
    EXPECT_GE(v, 400);
    EXPECT_LE(v, 420 + p.outdoor_noise);
  }
}

TEST(StepLight, PaperExamples) {
  LightParams p;
  EXPECT_DOUBLE_EQ(step_light(p, 2, 0.5, 400), 400);
  EXPECT_DOUBLE_EQ(step_light(p, 0, 0, 600), 0);
  EXPECT_DOUBLE_EQ(step_light(p, 4, 1, 600), 1000);
  EXPECT_THROW(step_light(p, 5, 0, 0), InvalidActionError);
  EXPECT_THROW(step_light(p, 1, 0.3, 0), InvalidActionError);
}

TEST(StepTemperature, NoExchangeIsFixedPoint) {
  ThermalParams p;
  for (double tr : {5.0, 17.3, 30.0}) EXPECT_EQ(step_temperature(p, tr, 25, {0, 2.0, 0, 3.0, 1}), tr);
}

TEST(StepTemperature, ZeroGradient) {
  ThermalParams p;
  EXPECT_DOUBLE_EQ(step_temperature(p, 21, 21, {0, 0, 1, 1.0, 0}), 21);
}

TEST(StepTemperature, WindowLossExample) {
  ThermalParams p;
  p.max_step_duration_h = 1.0;
  p.loss_coeff = 0.1 * p.heat_capacity() / 3600.0;  // delta = 0.1 * (te - tr) * wct
  EXPECT_NEAR(step_temperature(p, 15, 25, {0, 0, 1, 0.5, 0}), 15.5, 1e-12);
}

TEST(StepTemperature, AcSignAndCap) {
  ThermalParams p;
  const double full = p.ac_power_coeff * p.max_step_duration_h / p.heat_capacity();
  EXPECT_NEAR(step_temperature(p, 20, 20, {-1, 5.0, 0, 0, 0}), 20 - full, 1e-12);
  EXPECT_NEAR(step_temperature(p, 20, 20, {1, 0.1, 0, 0, 0}), 20 + full, 1e-12);
  EXPECT_NEAR(full, 3.0, 1e-9);
  EXPECT_THROW(step_temperature(p, 20, 20, {2, 0, 0, 0, 0}), InvalidActionError);
  EXPECT_THROW(step_temperature(p, 20, 20, {0, 0.05, 0, 0, 0}), InvalidActionError);
}

TEST(StepAir, NoExchangeUnchanged) {
  AirParams p;
  EXPECT_EQ(step_air(p, 733, 410, {0, 0, 0, 0}, 0), 733);
}

TEST(StepAir, EqualConcentrationVentilation) {
  AirParams p;
  EXPECT_NEAR(step_air(p, 410, 410, {0, 0, 1, 5.0}, 0), 410, 1e-9);
}

TEST(StepAir, SingleTermExample) {
  AirParams p;
  p.max_step_duration_h = 1.0;
  p.exchange_rate = 0.5 * p.volume;  // L * wct / V = 0.5 at wct = 1
  EXPECT_NEAR(step_air(p, 800, 400, {0, 0, 1, 1.0}, 0), 600, 1e-9);
}

TEST(StepAir, MassBalanceAndNonNegative) {
  AirParams p;
  InhabitantModel m;
  Rng r(8);
  for (int i = 0; i < 2000; ++i) {
    AirActuation a{p.purifier_levels[r.uniform_index(p.purifier_levels.size())],
                   p.duration_levels[r.uniform_index(p.duration_levels.size())],
                   p.window_levels[r.uniform_index(2)], p.duration_levels[r.uniform_index(p.duration_levels.size())]};
    const double b = m.breathing(r.uniform_index(4));
    const auto c = air_coefficients(p, a, b);
    if (!c.clamped) EXPECT_NEAR(c.retained + c.purification + c.ventilation + c.exhalation, 1.0, 1e-12);
    EXPECT_GE(step_air(p, r.uniform() * 2000, 400 + 20 * r.uniform(), a, b), 0.0);
  }
}

TEST(StepAir, MatchesOracle) {
  AirParams p;
  oracle::AirInputs in{900, 415, 170, 0.3, 1, 2.0, 0.0094};
  EXPECT_NEAR(step_air(p, in.ar, in.ae, {in.ap, in.apt, in.win, in.wct}, in.breathing), oracle::air_oracle(in), 1e-9);
  EXPECT_THROW(step_air(p, 500, 400, {55, 0, 0, 0}, 0), InvalidActionError);
}

TEST(Preferences, ShippedDefaults) {
  const auto prefs = default_preferences();
  EXPECT_EQ(prefs.target("light", 0), (Interval{0, 100}));
  EXPECT_EQ(prefs.target("temp", 1), (Interval{16, 19}));
  EXPECT_EQ(prefs.target("temp", 1), prefs.target("temp", 1));
  EXPECT_THROW(prefs.target("humidity", 0), ConfigError);
}

TEST(Reward, Examples) {
  RewardConfig cfg;
  EXPECT_EQ(reward(500, {300, 600}, 0, cfg), 1.0);
  EXPECT_EQ(reward(700, {300, 600}, 0, cfg), -1.0);
  cfg.constraint_enabled = true;
  EXPECT_DOUBLE_EQ(reward(500, {300, 600}, 1.0, cfg), 0.5);
  EXPECT_EQ(reward(700, {300, 600}, 1.0, cfg), -1.0);
}

TEST(Reward, SignEqualsSatisfaction) {
  RewardConfig cfg;
  cfg.constraint_enabled = true;
  Rng r(4);
  for (int i = 0; i < 1000; ++i) {
    cfg.constraint_weight = 0.999 * r.uniform();
    const double x = r.uniform() * 100;
    const Interval t{30, 60};
    EXPECT_EQ(reward(x, t, r.uniform(), cfg) > 0, t.contains(x));
  }
}

TEST(EnvironmentConfig, DefaultsValid) { EXPECT_NO_THROW(EnvironmentConfig{}.validate()); }

TEST(EnvironmentConfig, RejectsPreferenceOutsideRange) {
  EnvironmentConfig e;
  e.preferences.set("temp", 2, {30, 40});
  EXPECT_THROW(e.validate(), ConfigError);
}

TEST(EnvironmentConfig, RejectsBadLevelSets) {
  EnvironmentConfig e;
  e.thermal.duration_levels = {0, -0.1};
  EXPECT_THROW(e.validate(), ConfigError);
  EnvironmentConfig f;
  f.light.lamp_levels = {};
  EXPECT_THROW(f.validate(), ConfigError);
  EnvironmentConfig g;
  g.air.breathing_minutes = 10;
  EXPECT_THROW(g.validate(), ConfigError);
}

TEST(SimClock, HourWraps) {
  SimClock c;
  EXPECT_EQ(c.hour(), 0);
  c.step_index = 12;
  EXPECT_DOUBLE_EQ(c.hour(), 1.0);
  c.step_index = 288 + 6;
  EXPECT_DOUBLE_EQ(c.hour(), 0.5);
}
