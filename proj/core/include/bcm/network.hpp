#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bcm {

/// Raised when an input does not match the network's layer sizes.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::string_view kHiddenActivation = "relu";
inline constexpr std::string_view kOutputActivation = "sigmoid";

/// Fully connected layer sizes: input, hidden..., output.
struct NetworkStructure {
  std::vector<std::size_t> layer_sizes;

  /// [inputs, hidden..., 1]
  static NetworkStructure with_hidden(std::size_t inputs, std::span<const std::size_t> hidden);

  std::size_t layers() const { return layer_sizes.size(); }
  std::size_t input_size() const { return layer_sizes.front(); }

  /// At least four layers, all sizes positive, single output neuron.
  void validate() const;

  bool operator==(const NetworkStructure&) const = default;
};

/// Weights and biases of a fully connected feed-forward network.
///
/// `weights[l](s, t)` is the link from neuron s of layer l to neuron t of
/// layer l + 1; `biases[l]` belongs to layer l + 1. Hidden layers use ReLU,
/// the single output neuron a sigmoid.
struct Network {
  NetworkStructure structure;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  std::uint64_t seed = 0;

  std::size_t layers() const { return structure.layers(); }
  std::size_t parameter_count() const;
  bool all_finite() const;
};

/// He-uniform weights (standard deviation sqrt(2 / fan_in)), zero biases.
Network init_network(const NetworkStructure& structure, std::uint64_t seed);

struct ForwardPass {
  double output = 0.0;
  std::vector<Eigen::VectorXd> pre_activations;  // layers 1..L-1
  std::vector<Eigen::VectorXd> activations;      // layers 0..L-1
};

ForwardPass forward(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& input);

/// Sigmoid outputs for every row of `inputs`.
Eigen::VectorXd predict(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& inputs);

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static Gradients zeros_like(const Network& net);
};

/// Mean binary cross-entropy over the rows. When `grads` is non-null it
/// receives the analytic gradient by backpropagation.
double loss_and_gradients(const Network& net, const Eigen::Ref<const Eigen::MatrixXd>& inputs,
                          const Eigen::Ref<const Eigen::VectorXd>& labels, Gradients* grads);

}  // namespace bcm
