#include "hkdsho/agents/replay_buffer.hpp"

#include "hkdsho/common/errors.hpp"

namespace hkdsho::agents {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay capacity must be > 0");
  items_.reserve(capacity < 4096 ? capacity : 4096);
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
  ++pushed_;
}

const Transition& ReplayBuffer::operator[](std::size_t i) const {
  if (i >= items_.size()) throw ContractError("replay index out of range");
  return items_.size() < capacity_ ? items_[i] : items_[(head_ + i) % capacity_];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t n, Rng& rng) const {
  if (items_.empty()) throw ContractError("sampling from an empty replay buffer");
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = rng.uniform_index(items_.size());
  return out;
}

}  // namespace hkdsho::agents
