#include "cli.hpp"

#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/harness/config.hpp"
#include "hkdsho/harness/experiment.hpp"
#include "hkdsho/harness/metrics.hpp"
#include "hkdsho/orchestrator/records.hpp"
#include "hkdsho/rules/format.hpp"
#include "hkdsho/rules/serialization.hpp"

namespace hkdsho::cli {

namespace {

void print_entry(std::ostream& out, const harness::MetricsEntry& m) {
  out << std::left << std::setw(14) << m.variant << " seed " << std::setw(4) << m.seed << std::fixed
      << std::setprecision(4);
  for (const auto& [service, acc] : m.service_accuracy) out << ' ' << service << '=' << acc;
  out << " all=" << m.all_accuracy << " avg=" << m.average_accuracy;
  out << std::setprecision(1) << " (" << m.wall_seconds << "s)\n";
  out.unsetf(std::ios::fixed);
  out << std::setprecision(6);
}

int cmd_run(const std::string& path, const std::string& output, const std::vector<std::uint64_t>& seeds,
            std::uint64_t steps, bool trace, bool quiet, std::ostream& out) {
  auto config = harness::load_config(path);
  if (!output.empty()) config.output.directory = output;
  if (!seeds.empty()) config.seeds = seeds;
  if (steps > 0) config.steps = steps;
  if (trace) config.output.trace = true;
  harness::ProgressFn progress;
  if (!quiet) progress = [&](const harness::MetricsEntry& m) { print_entry(out, m); };
  const auto result = harness::run_experiment(config, progress);
  out << "metrics written to " << result.csv.string() << '\n';
  return 0;
}

int cmd_validate(const std::string& path, bool print, std::ostream& out) {
  const auto config = harness::load_config(path);
  if (print)
    out << harness::config_to_json(config).dump(2) << '\n';
  else
    out << path << ": ok (" << config.variants.size() << " variants, " << config.seeds.size() << " seeds, "
        << config.steps << " steps)\n";
  return 0;
}

int cmd_rules(const std::string& path, bool human, const std::string& service, std::ostream& out) {
  const auto store = rules::load_store(path);
  if (!human) {
    out << rules::store_to_json(store).dump(2) << '\n';
    return 0;
  }
  if (service.empty()) {
    out << rules::format_store(store);
  } else {
    for (const auto& r : store.extracted(service)) out << rules::format_rule(r) << '\n';
  }
  return 0;
}

int cmd_replay(const std::string& path, double eval_fraction, std::ostream& out) {
  const auto records = orchestrator::read_jsonl(std::filesystem::path(path));
  if (records.size() < 2) throw ContractError("trace '" + path + "' has fewer than two steps");
  std::size_t extracted = 0, merged = 0, deleted = 0, warnings = 0;
  std::map<std::string, std::size_t> sources;
  for (const auto& r : records) {
    for (const auto& e : r.events) {
      if (e.kind == rules::RuleEventKind::extracted) ++extracted;
      if (e.kind == rules::RuleEventKind::merged) ++merged;
      if (e.kind == rules::RuleEventKind::deleted) ++deleted;
    }
    warnings += r.warnings.size();
    for (const auto& [actuator, p] : r.decision.chosen) ++sources[orchestrator::to_string(p.source)];
  }
  const auto m = harness::accuracy_metrics(records, harness::eval_window(records.size() - 1, eval_fraction));
  out << "steps " << records.size() << '\n';
  out << "rule events: extracted " << extracted << ", merged " << merged << ", deleted " << deleted << '\n';
  out << "warnings " << warnings << '\n';
  out << "action sources:";
  for (const auto& [s, n] : sources) out << ' ' << s << '=' << n;
  out << '\n';
  out << "accuracy over last " << m.eval_steps << " steps:";
  for (const auto& [service, acc] : m.service_accuracy) out << ' ' << service << '=' << acc;
  out << " all=" << m.all_accuracy << " avg=" << m.average_accuracy << '\n';
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid smart-home simulator and experiment runner", "hkdsho"};
  app.require_subcommand(1);

  std::string path, output, service;
  std::vector<std::uint64_t> seeds;
  std::uint64_t steps = 0;
  bool trace = false, quiet = false, print = false;
  double eval_fraction = 0.2;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", path, "Experiment config (JSON)")->required();
  run->add_option("-o,--output", output, "Override the output directory");
  run->add_option("--seeds", seeds, "Override the seed list")->delimiter(',');
  run->add_option("--steps", steps, "Override the step count");
  run->add_flag("--trace", trace, "Write JSON-lines traces");
  run->add_flag("-q,--quiet", quiet, "No per-run progress");

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", path, "Experiment config (JSON)")->required();
  validate->add_flag("--print", print, "Print the resolved config with defaults filled in");

  auto* rules_cmd = app.add_subcommand("rules", "Inspect a saved rule store");
  rules_cmd->require_subcommand(1);
  auto* dump = rules_cmd->add_subcommand("dump", "Print the store as JSON");
  dump->add_option("store", path, "Rule store file")->required();
  auto* show = rules_cmd->add_subcommand("show", "Print rules in readable form");
  show->add_option("store", path, "Rule store file")->required();
  show->add_option("--service", service, "Only extracted rules of this service");

  auto* replay = app.add_subcommand("replay", "Summarize a JSON-lines trace and recompute its metrics");
  replay->add_option("trace", path, "Trace file")->required();
  replay->add_option("--eval-fraction", eval_fraction, "Trailing fraction of steps to evaluate")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run) return cmd_run(path, output, seeds, steps, trace, quiet, out);
    if (*validate) return cmd_validate(path, print, out);
    if (*dump) return cmd_rules(path, false, service, out);
    if (*show) return cmd_rules(path, true, service, out);
    if (*replay) return cmd_replay(path, eval_fraction, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hkdsho::cli
