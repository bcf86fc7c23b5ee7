#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bcm/costs.hpp"
#include "bcm/encoding.hpp"
#include "bcm/network.hpp"

namespace bcm {

/// Per-neuron link thresholds for every non-input layer.
///
/// `base[l - 1](n)` is the initial threshold of neuron n in layer l (l >= 1).
/// The effective threshold after `escalation_round` doublings is
/// base * 2^escalation_round.
struct ThresholdMap {
  std::vector<Eigen::VectorXd> base;
  int escalation_round = 0;
  std::size_t floored = 0;  // neurons with all-zero incoming weights

  double at(std::size_t layer, Eigen::Index neuron) const;
  Eigen::VectorXd layer(std::size_t layer) const;
  ThresholdMap escalated(int rounds = 1) const;
};

/// Weak links and weak neurons of one marking sweep.
///
/// `weak_links[l](s, t)` flags the link from neuron s in layer l to neuron t in
/// layer l + 1; `weak_neurons[l][n]` flags neuron n of layer l. The output
/// layer is never weak.
struct WeakMarking {
  std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> weak_links;
  std::vector<std::vector<bool>> weak_neurons;
  int rounds_used = 0;

  std::size_t weak_link_count() const;
  std::size_t weak_neuron_count(std::size_t layer) const;
  bool operator==(const WeakMarking& other) const;
};

/// delta_n = c0 * mean |w| over the incoming links of n; biases are ignored.
/// A neuron whose incoming weights are all zero gets the floor 64 * machine
/// epsilon so that every threshold stays positive. Requires 0 < c0 < 1.
ThresholdMap init_thresholds(const Network& net, double c0);

/// One backward sweep from the last hidden layer to the inputs: a link is
/// weak when |w| is below its target's threshold or its target is weak; a
/// neuron is weak when all of its outgoing links are weak.
WeakMarking mark_weak(const Network& net, const ThresholdMap& thresholds);

struct PruneConfig {
  double c0 = 0.05;
  int max_rounds = 256;
};

/// Raised when no weak feature emerges within max_rounds (non-finite weights).
class PruneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FeatureImportanceReport {
  std::vector<std::size_t> weak_input_neurons;
  FeatureSet weak_features;
  FeatureId selected_feature = 0;
  ThresholdMap thresholds_final;
  int rounds_used = 0;
};

/// Per-round diagnostic, handed to an optional observer.
struct MarkingRound {
  const ThresholdMap& thresholds;
  const WeakMarking& marking;
  const FeatureSet& weak_features;
};
using MarkingObserver = std::function<void(const MarkingRound&)>;

/// Least important input feature of a trained network.
///
/// Thresholds start at delta_n and double until at least one logical
/// feature has all of its input neurons weak. Among weak features the most
/// expensive is chosen; cost ties go to the lowest feature id.
FeatureImportanceReport find_least_important_feature(const Network& net, const EncodedDataset& encoding,
                                                     const CostProfile& profile, const PruneConfig& cfg = {},
                                                     const MarkingObserver& observer = {});

/// Structured text (JSON) rendering of one marking round, listing the
/// thresholds, weak neurons and weak links of every layer.
std::string marking_round_json(const MarkingRound& round, const EncodedDataset& encoding);

}  // namespace bcm
