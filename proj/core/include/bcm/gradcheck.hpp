#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "bcm/network.hpp"

namespace bcm {

struct GradientCheckOptions {
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  /// Below this magnitude the error is measured absolutely (scaled by the floor).
  double abs_floor = 1e-6;
  /// Applied to the analytic gradient before comparison; lets tests inject faults.
  std::function<void(Gradients&)> tamper;
};

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_kinks = 0;  // probes whose +-epsilon step flipped a ReLU
};

/// Compares backpropagation against central finite differences of the loss
/// on one labelled row. Parameters are sampled uniformly over all weights;
/// a probe is resampled when the perturbation moves any hidden unit across
/// the ReLU kink, where the loss is not differentiable.
GradientCheckResult gradient_check(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& row,
                                   double label, double epsilon, const GradientCheckOptions& options = {});

}  // namespace bcm
