#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hkdsho/agents/service_spec.hpp"

namespace hkdsho::agents {

/// Raw service observation -> network input.
///
/// Continuous values are scaled to [0, 1] (clamped) over the configured range,
/// categorical values become one-hot blocks.
class FeatureEncoder {
 public:
  FeatureEncoder() = default;
  explicit FeatureEncoder(std::vector<InputSpec> inputs);

  std::size_t raw_size() const { return inputs_.size(); }
  std::size_t encoded_size() const { return encoded_size_; }

  Eigen::VectorXd encode(std::span<const double> raw) const;
  void encode_into(std::span<const double> raw, Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  std::vector<InputSpec> inputs_;
  std::size_t encoded_size_ = 0;
};

}  // namespace hkdsho::agents
