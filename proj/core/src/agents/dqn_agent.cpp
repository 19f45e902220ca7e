#include "hkdsho/agents/dqn_agent.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hkdsho/common/errors.hpp"

namespace hkdsho::agents {

namespace {

constexpr int kWeightsVersion = 1;

nlohmann::json mlp_to_json(const Mlp& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : net.layers()) {
    layers.push_back({{"rows", l.weight.rows()},
                      {"cols", l.weight.cols()},
                      {"weight", std::vector<double>(l.weight.data(), l.weight.data() + l.weight.size())},
                      {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
  return layers;
}

void mlp_from_json(const nlohmann::json& j, Mlp& net) {
  auto& layers = net.layers();
  if (j.size() != layers.size()) throw ContractError("stored network has a different depth");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& lj = j.at(i);
    auto& l = layers[i];
    if (lj.at("rows").get<Eigen::Index>() != l.weight.rows() || lj.at("cols").get<Eigen::Index>() != l.weight.cols())
      throw ContractError("stored network has a different layer shape");
    const auto w = lj.at("weight").get<std::vector<double>>();
    const auto b = lj.at("bias").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(w.size()) != l.weight.size() || static_cast<Eigen::Index>(b.size()) != l.bias.size())
      throw ContractError("stored layer has the wrong number of values");
    std::copy(w.begin(), w.end(), l.weight.data());
    std::copy(b.begin(), b.end(), l.bias.data());
  }
}

}  // namespace

double AgentConfig::epsilon_at(std::uint64_t step) const {
  if (epsilon_decay_steps == 0 || step >= epsilon_decay_steps) return epsilon_end;
  const double frac = static_cast<double>(step) / static_cast<double>(epsilon_decay_steps);
  return epsilon_start + (epsilon_end - epsilon_start) * frac;
}

void AgentConfig::validate() const {
  if (!(epsilon_start >= 0 && epsilon_start <= 1 && epsilon_end >= 0 && epsilon_end <= 1))
    throw ConfigError("epsilon must lie in [0, 1]");
  if (!(gamma > 0 && gamma < 1)) throw ConfigError("discount must lie in (0, 1)");
  if (!(learning_rate > 0)) throw ConfigError("learning rate must be > 0");
  if (batch_size == 0 || replay_capacity < batch_size) throw ConfigError("replay capacity must be >= batch size > 0");
  if (target_sync_interval == 0) throw ConfigError("target sync interval must be > 0");
  for (auto h : hidden)
    if (h == 0) throw ConfigError("hidden layers must be non-empty");
}

const std::vector<double>& QOutput::at(std::string_view actuator) const {
  for (std::size_t i = 0; i < actuators.size(); ++i)
    if (actuators[i] == actuator) return values[i];
  throw ContractError("no Q head for actuator '" + std::string(actuator) + "'");
}

HeadLayout HeadLayout::of(const ServiceSpec& spec) {
  HeadLayout h;
  std::size_t off = 0;
  for (const auto& a : spec.actuators) {
    h.offsets.push_back(off);
    h.sizes.push_back(a.size());
    off += a.size();
  }
  return h;
}

double branch_td_loss(const Mlp& net, const HeadLayout& heads, const Eigen::MatrixXd& inputs,
                      const std::vector<std::vector<std::size_t>>& actions, const Eigen::MatrixXd& targets,
                      std::vector<DenseLayer>* grads) {
  const auto batch = inputs.cols();
  if (static_cast<Eigen::Index>(actions.size()) != batch || targets.cols() != batch ||
      static_cast<std::size_t>(targets.rows()) != heads.sizes.size())
    throw ContractError("TD batch shapes disagree");
  Mlp::Trace trace;
  const Eigen::MatrixXd q = net.forward(inputs, trace);
  Eigen::MatrixXd grad_out = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  double loss = 0.0;
  const double inv_batch = 1.0 / static_cast<double>(batch);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (std::size_t h = 0; h < heads.sizes.size(); ++h) {
      const std::size_t a = actions[static_cast<std::size_t>(b)].at(h);
      if (a >= heads.sizes[h]) throw ContractError("action index outside its head");
      const auto row = static_cast<Eigen::Index>(heads.offsets[h] + a);
      const double err = q(row, b) - targets(static_cast<Eigen::Index>(h), b);
      loss += 0.5 * err * err;
      grad_out(row, b) = err * inv_batch;
    }
  }
  if (grads) *grads = net.backward(trace, grad_out);
  return loss * inv_batch;
}

DqnAgent::DqnAgent(ServiceSpec spec, AgentConfig config, std::uint64_t seed)
    : spec_(std::move(spec)),
      config_(std::move(config)),
      encoder_(spec_.inputs),
      heads_(HeadLayout::of(spec_)),
      online_(encoder_.encoded_size(), config_.hidden, heads_.total()),
      optimizer_(config_.learning_rate),
      replay_(config_.replay_capacity),
      replay_rng_(Rng::derive(seed, "replay:" + spec_.id)) {
  spec_.validate();
  config_.validate();
  if (!config_.zero_init) {
    Rng init(Rng::derive(seed, "init:" + spec_.id));
    online_.init_he_uniform(init);
  }
  target_ = online_;
}

QOutput DqnAgent::propose_q(std::span<const double> observation) const {
  const Eigen::MatrixXd q = online_.forward(encoder_.encode(observation));
  QOutput out;
  for (std::size_t h = 0; h < heads_.sizes.size(); ++h) {
    out.actuators.push_back(spec_.actuators[h].name);
    auto seg = q.col(0).segment(static_cast<Eigen::Index>(heads_.offsets[h]), static_cast<Eigen::Index>(heads_.sizes[h]));
    out.values.emplace_back(seg.data(), seg.data() + seg.size());
  }
  return out;
}

void DqnAgent::record(Transition t) {
  if (t.observation.size() != encoder_.raw_size() || t.next_observation.size() != encoder_.raw_size())
    throw ContractError("transition observation does not match service '" + spec_.id + "'");
  if (t.action.size() != heads_.sizes.size()) throw ContractError("transition action does not cover every actuator");
  for (std::size_t h = 0; h < t.action.size(); ++h)
    if (t.action[h] >= heads_.sizes[h]) throw ContractError("transition action index out of range");
  replay_.push(std::move(t));
}

Eigen::MatrixXd DqnAgent::encode_batch(std::span<const std::size_t> indices, bool next) const {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(encoder_.encoded_size()), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const auto& t = replay_[indices[b]];
    encoder_.encode_into(next ? t.next_observation : t.observation, x.col(static_cast<Eigen::Index>(b)));
  }
  return x;
}

Eigen::MatrixXd DqnAgent::td_targets(std::span<const std::size_t> indices) const {
  const Eigen::MatrixXd qn = target_.forward(encode_batch(indices, true));
  Eigen::MatrixXd y(static_cast<Eigen::Index>(heads_.sizes.size()), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const double r = replay_[indices[b]].reward;
    for (std::size_t h = 0; h < heads_.sizes.size(); ++h) {
      const double best = qn.col(static_cast<Eigen::Index>(b))
                              .segment(static_cast<Eigen::Index>(heads_.offsets[h]), static_cast<Eigen::Index>(heads_.sizes[h]))
                              .maxCoeff();
      y(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(b)) = r + config_.gamma * best;
    }
  }
  return y;
}

std::vector<std::vector<std::size_t>> DqnAgent::batch_actions(std::span<const std::size_t> indices) const {
  std::vector<std::vector<std::size_t>> a;
  a.reserve(indices.size());
  for (auto i : indices) a.push_back(replay_[i].action);
  return a;
}

std::optional<double> DqnAgent::train_step() {
  if (replay_.size() < config_.batch_size) return std::nullopt;
  const auto idx = replay_.sample_indices(config_.batch_size, replay_rng_);
  std::vector<DenseLayer> grads;
  const double loss = branch_td_loss(online_, heads_, encode_batch(idx, false), batch_actions(idx), td_targets(idx), &grads);
  optimizer_.step(online_, grads);
  ++train_steps_;
  if (train_steps_ % config_.target_sync_interval == 0) sync_target();
  return loss;
}

double DqnAgent::loss_on(std::span<const std::size_t> indices) const {
  return branch_td_loss(online_, heads_, encode_batch(indices, false), batch_actions(indices), td_targets(indices), nullptr);
}

nlohmann::json DqnAgent::to_json() const {
  return {{"version", kWeightsVersion},
          {"service", spec_.id},
          {"train_steps", train_steps_},
          {"network", mlp_to_json(online_)},
          {"target_network", mlp_to_json(target_)},
          {"replay", {{"size", replay_.size()}, {"capacity", replay_.capacity()}, {"head", replay_.head()},
                      {"pushed", replay_.pushed()}}}};
}

void DqnAgent::load_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != kWeightsVersion) throw ContractError("unsupported agent weights version");
  if (j.at("service").get<std::string>() != spec_.id) throw ContractError("weights belong to another service");
  mlp_from_json(j.at("network"), online_);
  mlp_from_json(j.at("target_network"), target_);
  train_steps_ = j.at("train_steps").get<std::size_t>();
}

void DqnAgent::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write agent weights to " + path.string());
  out << to_json().dump() << '\n';
}

void DqnAgent::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read agent weights from " + path.string());
  load_json(nlohmann::json::parse(in));
}

}  // namespace hkdsho::agents
