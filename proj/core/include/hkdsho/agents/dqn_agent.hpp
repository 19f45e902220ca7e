#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkdsho/agents/encoder.hpp"
#include "hkdsho/agents/mlp.hpp"
#include "hkdsho/agents/replay_buffer.hpp"
#include "hkdsho/agents/service_spec.hpp"

namespace hkdsho::agents {

struct AgentConfig {
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::uint64_t epsilon_decay_steps = 1000;  // linear decay horizon
  double gamma = 0.9;
  double learning_rate = 1e-3;
  std::size_t replay_capacity = 10000;
  std::size_t batch_size = 64;
  std::size_t target_sync_interval = 200;  // train steps
  std::vector<std::size_t> hidden{64, 64};
  bool zero_init = false;

  double epsilon_at(std::uint64_t step) const;
  void validate() const;
};

/// Action-quality values, one vector per actuator, in service actuator order.
struct QOutput {
  std::vector<std::string> actuators;
  std::vector<std::vector<double>> values;

  /// Throws ContractError for an unknown actuator.
  const std::vector<double>& at(std::string_view actuator) const;
  std::size_t size() const { return actuators.size(); }
};

/// Offsets of each actuator head inside the network output.
struct HeadLayout {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> sizes;

  static HeadLayout of(const ServiceSpec& spec);
  std::size_t total() const { return offsets.empty() ? 0 : offsets.back() + sizes.back(); }
};

/// Mean over the batch of the summed per-head squared TD error (halved).
///
/// `targets` is heads x batch; `actions[b][h]` is the level taken on head h.
/// When `grads` is non-null it receives the parameter gradient.
double branch_td_loss(const Mlp& net, const HeadLayout& heads, const Eigen::MatrixXd& inputs,
                      const std::vector<std::vector<std::size_t>>& actions, const Eigen::MatrixXd& targets,
                      std::vector<DenseLayer>* grads);

/// Deep Q-learning agent with one Q head per actuator on a shared trunk.
class DqnAgent {
 public:
  DqnAgent(ServiceSpec spec, AgentConfig config, std::uint64_t seed);

  const ServiceSpec& spec() const { return spec_; }
  const AgentConfig& config() const { return config_; }
  const HeadLayout& heads() const { return heads_; }

  /// Throws ContractError when the observation does not match the service inputs.
  QOutput propose_q(std::span<const double> observation) const;

  void record(Transition t);

  /// One gradient step on a uniform batch; nullopt while the buffer is smaller than a batch.
  std::optional<double> train_step();

  /// TD loss of the current network on stored transitions (no update).
  double loss_on(std::span<const std::size_t> indices) const;

  std::size_t train_steps() const { return train_steps_; }
  const ReplayBuffer& replay() const { return replay_; }
  const Mlp& network() const { return online_; }
  Mlp& network() { return online_; }
  const Mlp& target_network() const { return target_; }
  void sync_target() { target_ = online_; }

  nlohmann::json to_json() const;
  /// Restores network weights and counters; the network shape must match.
  void load_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  void load(const std::filesystem::path& path);

 private:
  Eigen::MatrixXd encode_batch(std::span<const std::size_t> indices, bool next) const;
  Eigen::MatrixXd td_targets(std::span<const std::size_t> indices) const;
  std::vector<std::vector<std::size_t>> batch_actions(std::span<const std::size_t> indices) const;

  ServiceSpec spec_;
  AgentConfig config_;
  FeatureEncoder encoder_;
  HeadLayout heads_;
  Mlp online_;
  Mlp target_;
  Adam optimizer_;
  ReplayBuffer replay_;
  Rng replay_rng_;
  std::size_t train_steps_ = 0;
};

}  // namespace hkdsho::agents
