#include <benchmark/benchmark.h>

#include <filesystem>

#include "hkdsho/agents/dqn_agent.hpp"
#include "hkdsho/harness/config.hpp"
#include "hkdsho/orchestrator/home_system.hpp"
#include "hkdsho/rules/extraction.hpp"
#include "hkdsho/rules/reasoner.hpp"

using namespace hkdsho;

namespace {

const harness::ExperimentConfig& config() {
  static const auto cfg = harness::load_config(std::filesystem::path(HKDSHO_SOURCE_DIR) / "configs/default.json");
  return cfg;
}

std::vector<double> random_observation(const agents::ServiceSpec& spec, Rng& rng) {
  std::vector<double> obs;
  for (const auto& in : spec.inputs)
    obs.push_back(in.categorical() ? double(rng.uniform_index(in.categories)) : in.min + (in.max - in.min) * rng.uniform());
  return obs;
}

rules::ExtractedRule random_rule(Rng& rng, std::size_t states, double width) {
  rules::ExtractedRule r;
  r.service = "svc";
  for (std::size_t i = 0; i < states; ++i) {
    const double lo = 100 * rng.uniform();
    const double hi = lo + width * rng.uniform();
    r.conditions.push_back({"s" + std::to_string(i), lo, 0.5 * (lo + hi), hi});
  }
  r.conclusions.push_back({"a", double(rng.uniform_index(3)), 1});
  r.merge_count = 1;
  return r;
}

void BM_TrainStep(benchmark::State& state) {
  const auto spec = orchestrator::make_service_specs(config().home).at(1);
  auto agent_cfg = config().home.agent;
  agent_cfg.batch_size = static_cast<std::size_t>(state.range(0));
  agents::DqnAgent agent(spec, agent_cfg, 1);
  Rng rng(2);
  for (std::size_t i = 0; i < 2 * agent_cfg.batch_size; ++i) {
    agents::Transition t{random_observation(spec, rng), {}, 0, random_observation(spec, rng), rng.uniform() - 0.5};
    for (const auto& a : spec.actuators) t.action.push_back(rng.uniform_index(a.levels.size()));
    agent.record(std::move(t));
  }
  for (auto _ : state) benchmark::DoNotOptimize(agent.train_step());
}
BENCHMARK(BM_TrainStep)->Arg(32)->Arg(64)->Arg(128);

void BM_ExtractedInfer(benchmark::State& state) {
  Rng rng(3);
  std::vector<rules::ExtractedRule> rs;
  for (int i = 0; i < state.range(0); ++i) {
    rs.push_back(random_rule(rng, 4, 30));
    rs.back().id = "r" + std::to_string(i);
  }
  const std::vector<double> obs{50, 50, 50, 50};
  for (auto _ : state) benchmark::DoNotOptimize(rules::extracted_infer(rs, obs));
}
BENCHMARK(BM_ExtractedInfer)->Range(8, 512);

void BM_MergeRules(benchmark::State& state) {
  Rng rng(4);
  std::vector<rules::ExtractedRule> rs;
  for (int i = 0; i < state.range(0); ++i) rs.push_back(random_rule(rng, 3, 10));
  for (auto _ : state) {
    state.PauseTiming();
    rules::RuleStore store;
    for (const auto& r : rs) store.insert_extracted(r, 0);
    state.ResumeTiming();
    benchmark::DoNotOptimize(rules::merge_rules(store, 0));
  }
}
BENCHMARK(BM_MergeRules)->Range(8, 256);

void BM_HomeStep(benchmark::State& state) {
  const auto variant = static_cast<orchestrator::Variant>(state.range(0));
  orchestrator::HomeSystem sys(config().home, config().system_variant(variant), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sys.step());
  state.SetLabel(orchestrator::to_string(variant));
}
BENCHMARK(BM_HomeStep)->DenseRange(0, 4);

}  // namespace

BENCHMARK_MAIN();
