#include "hkdsho/rules/reasoner.hpp"

#include <cmath>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::rules {

double ppmcc(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("ppmcc: vectors differ in length");
  if (x.size() < 2) throw ContractError("ppmcc: needs at least two samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  const double r = sxy / std::sqrt(sxx * syy);
  return std::fmax(-1.0, std::fmin(1.0, r));
}

ExistingMatch existing_match(std::span<const ExistingRule> rules, const Observation& observation) {
  struct Best {
    int priority;
    double level;
    std::string rule;
    bool conflict;
  };
  std::map<std::string, Best> best;
  for (const auto& r : rules) {
    if (!r.matches(observation)) continue;
    for (const auto& [actuator, level] : r.conclusions) {
      auto it = best.find(actuator);
      if (it == best.end() || r.priority > it->second.priority) {
        best[actuator] = {r.priority, level, r.id, false};
      } else if (r.priority == it->second.priority && level != it->second.level) {
        it->second.conflict = true;
      }
    }
  }
  ExistingMatch m;
  for (const auto& [actuator, b] : best) {
    if (b.conflict) {
      m.conflicts.insert(actuator);
    } else {
      m.levels[actuator] = b.level;
      m.rule_of[actuator] = b.rule;
    }
  }
  return m;
}

std::string to_string(InferenceBranch b) {
  switch (b) {
    case InferenceBranch::single_containment: return "single_containment";
    case InferenceBranch::correlation: return "correlation";
    case InferenceBranch::occurrence_count: return "occurrence_count";
  }
  return "unknown";
}

std::optional<Inference> extracted_infer(std::span<const ExtractedRule> rules, std::span<const double> observation,
                                         double corr_epsilon, std::span<const Interval> ranges) {
  if (rules.empty()) return std::nullopt;
  if (!ranges.empty() && ranges.size() != observation.size())
    throw ContractError("extracted_infer: one range per state is required");
  auto scaled = [&](std::vector<double> v) {
    for (std::size_t i = 0; i < ranges.size(); ++i)
      if (ranges[i].width() > 0) v[i] = (v[i] - ranges[i].min) / ranges[i].width();
    return v;
  };
  const auto obs = scaled(std::vector<double>(observation.begin(), observation.end()));

  std::vector<const ExtractedRule*> containing;
  for (const auto& r : rules)
    if (r.contains(observation)) containing.push_back(&r);

  if (containing.size() == 1) {
    return Inference{containing.front()->id, containing.front()->actions(), InferenceBranch::single_containment, {}};
  }

  std::vector<const ExtractedRule*> candidates = containing;
  if (candidates.empty())
    for (const auto& r : rules) candidates.push_back(&r);

  Inference inf;
  std::size_t top = 0;
  double top_corr = -2.0;
  double runner_up = -2.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double c = ppmcc(obs, scaled(candidates[i]->averages()));
    inf.correlations.emplace_back(candidates[i]->id, c);
    if (c > top_corr) {
      runner_up = top_corr;
      top_corr = c;
      top = i;
    } else if (c > runner_up) {
      runner_up = c;
    }
  }

  // A lone candidate has no runner-up and wins outright.
  if (candidates.size() == 1 || top_corr - runner_up > corr_epsilon) {
    inf.rule_id = candidates[top]->id;
    inf.conclusions = candidates[top]->actions();
    inf.branch = InferenceBranch::correlation;
    return inf;
  }

  std::size_t pick = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i]->occurrence_sum() > candidates[pick]->occurrence_sum()) pick = i;
  inf.rule_id = candidates[pick]->id;
  inf.conclusions = candidates[pick]->actions();
  inf.branch = InferenceBranch::occurrence_count;
  return inf;
}

}  // namespace hkdsho::rules
