#include "hkdsho/agents/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::agents {

FeatureEncoder::FeatureEncoder(std::vector<InputSpec> inputs) : inputs_(std::move(inputs)) {
  for (const auto& in : inputs_) encoded_size_ += in.categorical() ? in.categories : 1;
}

Eigen::VectorXd FeatureEncoder::encode(std::span<const double> raw) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(encoded_size_));
  encode_into(raw, out);
  return out;
}

void FeatureEncoder::encode_into(std::span<const double> raw, Eigen::Ref<Eigen::VectorXd> out) const {
  if (raw.size() != inputs_.size())
    throw ContractError("observation has " + std::to_string(raw.size()) + " values, expected " +
                        std::to_string(inputs_.size()));
  if (static_cast<std::size_t>(out.size()) != encoded_size_) throw ContractError("encoder output size mismatch");
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    const auto& in = inputs_[i];
    if (in.categorical()) {
      const double code = raw[i];
      if (code < 0 || code >= static_cast<double>(in.categories) || code != std::floor(code))
        throw ContractError("categorical input '" + in.name + "' out of range");
      for (std::size_t c = 0; c < in.categories; ++c) out[k++] = (static_cast<double>(c) == code) ? 1.0 : 0.0;
    } else {
      out[k++] = std::clamp((raw[i] - in.min) / (in.max - in.min), 0.0, 1.0);
    }
  }
}

}  // namespace hkdsho::agents
