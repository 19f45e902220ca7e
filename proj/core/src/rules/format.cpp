#include "hkdsho/rules/format.hpp"

#include <sstream>

namespace hkdsho::rules {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string format_rule(const ExtractedRule& r) {
  std::ostringstream os;
  os << "[" << r.id << "] service " << r.service << ", merged " << r.merge_count << "x\n  if ";
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    const auto& c = r.conditions[i];
    if (i) os << "\n     and ";
    os << c.state << " in [" << num(c.min) << ", " << num(c.max) << "] (avg " << num(c.avg) << ")";
  }
  os << "\n  then ";
  for (std::size_t i = 0; i < r.conclusions.size(); ++i) {
    const auto& c = r.conclusions[i];
    if (i) os << ", ";
    os << c.actuator << "=" << num(c.level) << " (count " << c.count << ")";
  }
  os << "\n";
  return os.str();
}

std::string format_rule(const ExistingRule& r) {
  std::ostringstream os;
  os << "[" << r.id << "] existing, priority " << r.priority << "\n  if ";
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    const auto& c = r.conditions[i];
    if (i) os << "\n     and ";
    if (c.min == c.max)
      os << c.state << " = " << num(c.min);
    else
      os << c.state << " in [" << num(c.min) << ", " << num(c.max) << "]";
  }
  os << "\n  then ";
  bool first = true;
  for (const auto& [actuator, level] : r.conclusions) {
    if (!first) os << ", ";
    first = false;
    os << actuator << "=" << num(level);
  }
  os << "\n";
  return os.str();
}

std::string format_store(const RuleStore& store) {
  std::ostringstream os;
  for (const auto& r : store.existing()) os << format_rule(r) << "\n";
  for (const auto& r : store.all_extracted()) os << format_rule(r) << "\n";
  return os.str();
}

}  // namespace hkdsho::rules
