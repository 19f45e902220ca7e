#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hkdsho {

/// Named, ordered state readings at one time step.
class Observation {
 public:
  Observation() = default;
  Observation(std::initializer_list<std::pair<std::string, double>> readings);

  /// Inserts a reading, or overwrites it in place if the name exists.
  void set(const std::string& name, double value);

  std::optional<double> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Throws ContractError when the reading is missing.
  double at(std::string_view name) const;

  /// Values for `names`, in that order.
  std::vector<double> select(std::span<const std::string> names) const;

  const std::vector<std::pair<std::string, double>>& readings() const { return readings_; }
  std::size_t size() const { return readings_.size(); }

 private:
  std::vector<std::pair<std::string, double>> readings_;
};

/// A closed interval [min, max].
struct Interval {
  double min = 0.0;
  double max = 0.0;

  bool contains(double x) const { return x >= min && x <= max; }
  bool overlaps(const Interval& o) const { return min <= o.max && o.min <= max; }
  double width() const { return max - min; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A discrete actuator and its ordered level set.
struct Actuator {
  std::string name;
  std::vector<double> levels;
  /// Counts towards the electrical-usage penalty.
  bool electrical = false;

  bool contains(double level) const;
  /// Index of an exact level value; throws InvalidActionError otherwise.
  std::size_t index_of(double level) const;
  std::size_t size() const { return levels.size(); }
};

/// Actuator name to chosen level value.
using ActionMap = std::map<std::string, double>;

}  // namespace hkdsho
