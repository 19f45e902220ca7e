#include "hkdsho/agents/mlp.hpp"

#include <cmath>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::agents {

Mlp::Mlp(std::size_t inputs, const std::vector<std::size_t>& hidden, std::size_t outputs) {
  std::size_t prev = inputs;
  auto add = [&](std::size_t out) {
    layers_.push_back({Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(prev)),
                       Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out))});
    prev = out;
  };
  for (std::size_t h : hidden) add(h);
  add(outputs);
}

void Mlp::init_he_uniform(Rng& rng) {
  for (auto& layer : layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.weight.cols()));
    for (Eigen::Index c = 0; c < layer.weight.cols(); ++c)
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
        layer.weight(r, c) = (2.0 * rng.uniform() - 1.0) * limit;
    layer.bias.setZero();
  }
}

std::size_t Mlp::input_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weight.cols());
}

std::size_t Mlp::output_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().weight.rows());
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  Trace unused;
  return forward(x, unused);
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Trace& trace) const {
  if (static_cast<std::size_t>(x.rows()) != input_size()) throw ContractError("network input size mismatch");
  trace.activations.clear();
  trace.activations.reserve(layers_.size() + 1);
  trace.activations.push_back(x);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    Eigen::MatrixXd z = l.weight * trace.activations.back();
    z.colwise() += l.bias;
    if (i + 1 < layers_.size()) z = z.cwiseMax(0.0);
    trace.activations.push_back(std::move(z));
  }
  return trace.activations.back();
}

std::vector<DenseLayer> Mlp::backward(const Trace& trace, const Eigen::MatrixXd& grad_out) const {
  if (trace.activations.size() != layers_.size() + 1) throw ContractError("trace does not match network");
  std::vector<DenseLayer> grads(layers_.size());
  Eigen::MatrixXd delta = grad_out;
  for (std::size_t i = layers_.size(); i-- > 0;) {
    const Eigen::MatrixXd& input = trace.activations[i];
    grads[i].weight = delta * input.transpose();
    grads[i].bias = delta.rowwise().sum();
    if (i > 0) {
      Eigen::MatrixXd back = layers_[i].weight.transpose() * delta;
      // ReLU derivative from the post-activation of the previous layer.
      delta = back.cwiseProduct((input.array() > 0.0).cast<double>().matrix());
    }
  }
  return grads;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

std::vector<double> Mlp::flatten(const std::vector<DenseLayer>& layers) {
  std::vector<double> out;
  for (const auto& l : layers) {
    out.insert(out.end(), l.weight.data(), l.weight.data() + l.weight.size());
    out.insert(out.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return out;
}

std::vector<double> Mlp::flat_parameters() const { return flatten(layers_); }

void Mlp::set_flat_parameters(std::span<const double> values) {
  if (values.size() != parameter_count()) throw ContractError("parameter vector size mismatch");
  std::size_t k = 0;
  for (auto& l : layers_) {
    for (Eigen::Index i = 0; i < l.weight.size(); ++i) l.weight.data()[i] = values[k++];
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias.data()[i] = values[k++];
  }
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    const auto& x = a.layers_[i];
    const auto& y = b.layers_[i];
    if (x.weight.rows() != y.weight.rows() || x.weight.cols() != y.weight.cols()) return false;
    if (x.weight != y.weight || x.bias != y.bias) return false;
  }
  return true;
}

void Adam::step(Mlp& net, const std::vector<DenseLayer>& grads) {
  auto& layers = net.layers();
  if (grads.size() != layers.size()) throw ContractError("gradient does not match network");
  if (m_.empty()) {
    for (const auto& l : layers) {
      m_.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()), Eigen::VectorXd::Zero(l.bias.size())});
      v_.push_back(m_.back());
    }
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const double step = lr_ * std::sqrt(c2) / c1;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    m_[i].weight = beta1_ * m_[i].weight + (1 - beta1_) * grads[i].weight;
    v_[i].weight = beta2_ * v_[i].weight + (1 - beta2_) * grads[i].weight.cwiseAbs2();
    m_[i].bias = beta1_ * m_[i].bias + (1 - beta1_) * grads[i].bias;
    v_[i].bias = beta2_ * v_[i].bias + (1 - beta2_) * grads[i].bias.cwiseAbs2();
    layers[i].weight.array() -= step * m_[i].weight.array() / (v_[i].weight.array().sqrt() + eps_);
    layers[i].bias.array() -= step * m_[i].bias.array() / (v_[i].bias.array().sqrt() + eps_);
  }
}

}  // namespace hkdsho::agents
