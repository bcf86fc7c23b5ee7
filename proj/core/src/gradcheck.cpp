#include "bcm/gradcheck.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bcm/random.hpp"

namespace bcm {

namespace {

std::vector<bool> relu_pattern(const Network& net, const Eigen::VectorXd& row) {
  const auto pass = forward(net, row);
  std::vector<bool> pattern;
  for (std::size_t l = 0; l + 1 < pass.pre_activations.size(); ++l)
    for (Eigen::Index i = 0; i < pass.pre_activations[l].size(); ++i)
      pattern.push_back(pass.pre_activations[l](i) > 0.0);
  return pattern;
}

}  // namespace

GradientCheckResult gradient_check(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& row,
                                   double label, double epsilon, const GradientCheckOptions& options) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("gradient_check: epsilon must be positive");
  const Eigen::MatrixXd x = row.transpose();
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, label);

  Gradients analytic;
  loss_and_gradients(net, x, y, &analytic);
  if (options.tamper) options.tamper(analytic);

  std::vector<std::size_t> offsets{0};
  for (const auto& w : net.weights) offsets.push_back(offsets.back() + static_cast<std::size_t>(w.size()));
  const std::size_t total = offsets.back();

  Rng rng(derive_seed(options.seed, 0x67726164));  // "grad"
  Network probe = net;
  GradientCheckResult result;
  const std::size_t max_attempts = options.samples * 20;
  for (std::size_t attempt = 0; result.checked < options.samples && attempt < max_attempts; ++attempt) {
    const auto flat = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(total) - 1));
    std::size_t layer = 0;
    while (flat >= offsets[layer + 1]) ++layer;
    const auto index = static_cast<Eigen::Index>(flat - offsets[layer]);
    double& w = probe.weights[layer].data()[index];
    const double original = w;

    w = original + epsilon;
    const auto pattern_plus = relu_pattern(probe, row);
    const double loss_plus = loss_and_gradients(probe, x, y, nullptr);
    w = original - epsilon;
    const auto pattern_minus = relu_pattern(probe, row);
    const double loss_minus = loss_and_gradients(probe, x, y, nullptr);
    w = original;

    if (pattern_plus != pattern_minus) {
      ++result.skipped_kinks;
      continue;
    }
    const double numeric = (loss_plus - loss_minus) / (2.0 * epsilon);
    const double exact = analytic.weights[layer].data()[index];
    const double scale = std::max({std::abs(numeric), std::abs(exact), options.abs_floor});
    result.max_relative_error = std::max(result.max_relative_error, std::abs(numeric - exact) / scale);
    ++result.checked;
  }
  return result;
}

}  // namespace bcm
