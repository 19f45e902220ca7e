#include "hkdsho/harness/experiment.hpp"

#include <chrono>
#include <fstream>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/rules/serialization.hpp"

namespace hkdsho::harness {

namespace fs = std::filesystem;
using orchestrator::HomeSystem;
using orchestrator::Variant;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

MetricsEntry evaluate(const ExperimentConfig& config, const std::vector<orchestrator::StepRecord>& records) {
  const std::size_t evaluable = records.size() - 1;
  return accuracy_metrics(records, eval_window(evaluable, config.eval_fraction));
}

}  // namespace

std::string run_tag(Variant variant, std::uint64_t seed) {
  return orchestrator::to_string(variant) + "_seed" + std::to_string(seed);
}

RunResult run_single(const ExperimentConfig& config, Variant variant, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  HomeSystem home(config.home, config.system_variant(variant), seed);
  RunResult r;
  r.records = home.run(config.steps);
  r.metrics = evaluate(config, r.records);
  r.metrics.variant = orchestrator::to_string(variant);
  r.metrics.seed = seed;
  r.metrics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  const fs::path dir = config.output.directory;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  ExperimentResult result;
  for (const auto variant : config.variants) {
    const auto sv = config.system_variant(variant);
    for (const auto seed : config.seeds) {
      const auto start = std::chrono::steady_clock::now();
      HomeSystem home(config.home, sv, seed);
      const auto records = home.run(config.steps);
      MetricsEntry m = evaluate(config, records);
      m.variant = orchestrator::to_string(variant);
      m.seed = seed;
      m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      const std::string tag = run_tag(variant, seed);
      if (config.output.trace) {
        const fs::path p = dir / ("trace_" + tag + ".jsonl");
        auto out = open_out(p);
        orchestrator::write_jsonl(out, records);
        finish(out, p);
        result.artifacts.push_back(p);
      }
      if (config.output.rules && (sv.uses_existing() || sv.uses_extracted())) {
        const fs::path p = dir / ("rules_" + tag + ".json");
        rules::save_store(home.rules(), p);
        result.artifacts.push_back(p);
      }
      if (config.output.weights && home.learner()) {
        for (const auto& spec : home.learner()->agent_specs()) {
          const fs::path p = dir / ("weights_" + tag + "_" + spec.id + ".json");
          home.learner()->agent(spec.id).save(p);
          result.artifacts.push_back(p);
        }
      }
      if (progress) progress(m);
      result.report.entries.push_back(std::move(m));
    }
  }

  result.csv = dir / config.output.csv;
  auto out = open_out(result.csv);
  write_csv(out, result.report);
  finish(out, result.csv);
  return result;
}

}  // namespace hkdsho::harness
