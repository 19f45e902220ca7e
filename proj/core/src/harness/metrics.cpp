#include "hkdsho/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::harness {

const MetricsEntry& MetricsReport::find(const std::string& variant, std::uint64_t seed) const {
  for (const auto& e : entries)
    if (e.variant == variant && e.seed == seed) return e;
  throw NotFoundError("no metrics for " + variant + " seed " + std::to_string(seed));
}

MetricsEntry accuracy_from_correctness(const std::map<std::string, std::vector<bool>>& correct, std::size_t window) {
  if (correct.empty()) throw ContractError("no services to evaluate");
  if (window == 0) throw ContractError("empty evaluation window");
  const std::size_t n = correct.begin()->second.size();
  for (const auto& [service, flags] : correct)
    if (flags.size() != n) throw ContractError("service '" + service + "' has a different step count");
  if (window > n)
    throw ContractError("evaluation window " + std::to_string(window) + " exceeds " + std::to_string(n) + " steps");

  MetricsEntry m;
  m.steps = n;
  m.eval_steps = window;
  const std::size_t first = n - window;
  std::size_t all = 0;
  std::map<std::string, std::size_t> hits;
  for (std::size_t i = first; i < n; ++i) {
    bool every = true;
    for (const auto& [service, flags] : correct) {
      if (flags[i])
        ++hits[service];
      else
        every = false;
    }
    if (every) ++all;
  }
  double sum = 0.0;
  for (const auto& [service, flags] : correct) {
    const double acc = static_cast<double>(hits[service]) / static_cast<double>(window);
    m.service_accuracy[service] = acc;
    sum += acc;
  }
  m.all_accuracy = static_cast<double>(all) / static_cast<double>(window);
  m.average_accuracy = (sum + m.all_accuracy) / static_cast<double>(correct.size() + 1);
  return m;
}

std::map<std::string, std::vector<bool>> correctness(const std::vector<orchestrator::StepRecord>& records) {
  std::map<std::string, std::vector<bool>> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!records[i].rewards) throw ContractError("record " + std::to_string(i) + " has no rewards");
    for (const auto& [service, r] : *records[i].rewards) out[service].push_back(r > 0.0);
  }
  return out;
}

MetricsEntry accuracy_metrics(const std::vector<orchestrator::StepRecord>& records, std::size_t window) {
  if (records.size() < 2) throw ContractError("at least two records are needed to evaluate one step");
  auto m = accuracy_from_correctness(correctness(records), window);
  m.steps = records.size();
  return m;
}

std::size_t eval_window(std::size_t evaluable, double fraction) {
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(evaluable)));
  return std::max<std::size_t>(1, std::min(k, evaluable));
}

namespace {
std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}
}  // namespace

void write_csv(std::ostream& out, const MetricsReport& report) {
  out << "variant,seed,metric,value\n";
  for (const auto& e : report.entries) {
    auto row = [&](const std::string& metric, const std::string& value) {
      out << e.variant << ',' << e.seed << ',' << metric << ',' << value << '\n';
    };
    for (const auto& [service, acc] : e.service_accuracy) row("accuracy_" + service, fmt(acc));
    row("accuracy_all", fmt(e.all_accuracy));
    row("accuracy_avg", fmt(e.average_accuracy));
    row("steps", std::to_string(e.steps));
    row("eval_steps", std::to_string(e.eval_steps));
  }
}

}  // namespace hkdsho::harness
