#pragma once

#include <cstddef>
#include <vector>

#include "hkdsho/common/random.hpp"

namespace hkdsho::agents {

/// One service's experience for one step; the reward arrives one step after the action.
struct Transition {
  std::vector<double> observation;        // raw inputs, service order
  std::vector<std::size_t> action;        // level index per actuator head
  double outcome = 0.0;                   // monitored state after the action
  std::vector<double> next_observation;
  double reward = 0.0;
};

/// Fixed-capacity ring buffer with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  /// Slot that the next push overwrites once full.
  std::size_t head() const { return head_; }
  std::size_t pushed() const { return pushed_; }

  /// Logical order: 0 is the oldest stored transition.
  const Transition& operator[](std::size_t i) const;

  /// Uniform indices with replacement.
  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::size_t pushed_ = 0;
  std::vector<Transition> items_;
};

}  // namespace hkdsho::agents
