#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hkdsho/common/random.hpp"

namespace hkdsho::agents {

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

/// Fully connected network: rectified-linear hidden layers, linear output.
/// Samples are columns.
class Mlp {
 public:
  /// Activations of every layer from one forward pass; [0] is the input.
  struct Trace {
    std::vector<Eigen::MatrixXd> activations;
  };

  Mlp() = default;
  /// All weights and biases start at zero.
  Mlp(std::size_t inputs, const std::vector<std::size_t>& hidden, std::size_t outputs);

  /// He-uniform weights, zero biases.
  void init_he_uniform(Rng& rng);

  std::size_t input_size() const;
  std::size_t output_size() const;

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Trace& trace) const;

  /// Parameter gradients given dLoss/dOutput for the traced batch.
  std::vector<DenseLayer> backward(const Trace& trace, const Eigen::MatrixXd& grad_out) const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  std::size_t parameter_count() const;
  std::vector<double> flat_parameters() const;
  void set_flat_parameters(std::span<const double> values);
  static std::vector<double> flatten(const std::vector<DenseLayer>& layers);

  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  std::vector<DenseLayer> layers_;
};

class Adam {
 public:
  explicit Adam(double learning_rate = 1e-3, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(Mlp& net, const std::vector<DenseLayer>& grads);
  std::size_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::size_t t_ = 0;
  std::vector<DenseLayer> m_, v_;
};

}  // namespace hkdsho::agents
