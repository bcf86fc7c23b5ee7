#include "bcm/network.hpp"

#include <cmath>
#include <string>

#include "bcm/random.hpp"

namespace bcm {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -[y log s(z) + (1 - y) log(1 - s(z))], computed without overflow.
double bce_from_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

void check_input_width(const Network& net, Eigen::Index width) {
  if (static_cast<std::size_t>(width) != net.structure.input_size())
    throw ShapeError("input has " + std::to_string(width) + " columns, network expects " +
                     std::to_string(net.structure.input_size()));
}

}  // namespace

NetworkStructure NetworkStructure::with_hidden(std::size_t inputs, std::span<const std::size_t> hidden) {
  NetworkStructure s;
  s.layer_sizes.push_back(inputs);
  s.layer_sizes.insert(s.layer_sizes.end(), hidden.begin(), hidden.end());
  s.layer_sizes.push_back(1);
  return s;
}

void NetworkStructure::validate() const {
  if (layer_sizes.size() < 4)
    throw ShapeError("network needs at least 4 layers, got " + std::to_string(layer_sizes.size()));
  for (auto n : layer_sizes)
    if (n == 0) throw ShapeError("layer sizes must be positive");
  if (layer_sizes.back() != 1) throw ShapeError("output layer must have exactly one neuron");
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  return n;
}

bool Network::all_finite() const {
  for (std::size_t l = 0; l < weights.size(); ++l)
    if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
  return true;
}

Network init_network(const NetworkStructure& structure, std::uint64_t seed) {
  structure.validate();
  Network net;
  net.structure = structure;
  net.seed = seed;
  Rng rng(derive_seed(seed, 0x696E6974));  // "init"
  for (std::size_t l = 0; l + 1 < structure.layers(); ++l) {
    const auto fan_in = static_cast<Eigen::Index>(structure.layer_sizes[l]);
    const auto fan_out = static_cast<Eigen::Index>(structure.layer_sizes[l + 1]);
    // Uniform on [-a, a] has standard deviation a / sqrt(3).
    const double a = std::sqrt(6.0 / static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_in, fan_out);
    for (Eigen::Index s = 0; s < fan_in; ++s)
      for (Eigen::Index t = 0; t < fan_out; ++t) w(s, t) = rng.uniform(-a, a);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

ForwardPass forward(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& input) {
  check_input_width(net, input.size());
  ForwardPass pass;
  pass.activations.push_back(input);
  const std::size_t last = net.weights.size() - 1;
  for (std::size_t l = 0; l <= last; ++l) {
    Eigen::VectorXd z = net.weights[l].transpose() * pass.activations.back() + net.biases[l];
    pass.pre_activations.push_back(z);
    if (l == last) {
      pass.activations.push_back(z.unaryExpr([](double v) { return sigmoid(v); }));
    } else {
      pass.activations.push_back(z.cwiseMax(0.0));
    }
  }
  pass.output = pass.activations.back()(0);
  return pass;
}

Eigen::VectorXd predict(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  check_input_width(net, inputs.cols());
  Eigen::MatrixXd a = inputs;
  const std::size_t last = net.weights.size() - 1;
  for (std::size_t l = 0; l <= last; ++l) {
    Eigen::MatrixXd z = a * net.weights[l];
    z.rowwise() += net.biases[l].transpose();
    if (l == last) return z.col(0).unaryExpr([](double v) { return sigmoid(v); });
    a = z.cwiseMax(0.0);
  }
  return {};
}

Gradients Gradients::zeros_like(const Network& net) {
  Gradients g;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    g.weights.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
  }
  return g;
}

double loss_and_gradients(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& inputs,
                          const Eigen::Ref<const Eigen::VectorXd>& labels, Gradients* grads) {
  check_input_width(net, inputs.cols());
  if (inputs.rows() != labels.size()) throw ShapeError("row count differs from label count");
  const auto n = inputs.rows();
  if (n == 0) throw ShapeError("loss over an empty batch");

  const std::size_t depth = net.weights.size();
  std::vector<Eigen::MatrixXd> acts;  // acts[l] = output of layer l
  std::vector<Eigen::MatrixXd> pre;   // pre[l] = pre-activation of layer l + 1
  acts.reserve(depth + 1);
  pre.reserve(depth);
  acts.emplace_back(inputs);
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd z = acts.back() * net.weights[l];
    z.rowwise() += net.biases[l].transpose();
    pre.push_back(std::move(z));
    if (l + 1 < depth) acts.emplace_back(pre.back().cwiseMax(0.0));
  }

  const auto& logits = pre.back();
  double loss = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) loss += bce_from_logit(logits(r, 0), labels(r));
  loss /= static_cast<double>(n);
  if (grads == nullptr) return loss;

  grads->weights.resize(depth);
  grads->biases.resize(depth);
  Eigen::MatrixXd delta(n, 1);
  for (Eigen::Index r = 0; r < n; ++r) delta(r, 0) = (sigmoid(logits(r, 0)) - labels(r)) / static_cast<double>(n);
  for (std::size_t l = depth; l-- > 0;) {
    grads->weights[l].noalias() = acts[l].transpose() * delta;
    grads->biases[l] = delta.colwise().sum().transpose();
    if (l == 0) break;
    Eigen::MatrixXd upstream = delta * net.weights[l].transpose();
    delta = upstream.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
  }
  return loss;
}

}  // namespace bcm
