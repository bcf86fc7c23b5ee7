#include "bcm/prune.hpp"

#include <cmath>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

namespace bcm {

double ThresholdMap::at(std::size_t layer, Eigen::Index neuron) const {
  return std::ldexp(base.at(layer - 1)(neuron), escalation_round);
}

Eigen::VectorXd ThresholdMap::layer(std::size_t layer) const {
  return base.at(layer - 1) * std::ldexp(1.0, escalation_round);
}

ThresholdMap ThresholdMap::escalated(int rounds) const {
  ThresholdMap next = *this;
  next.escalation_round += rounds;
  return next;
}

std::size_t WeakMarking::weak_link_count() const {
  std::size_t n = 0;
  for (const auto& m : weak_links) n += static_cast<std::size_t>(m.count());
  return n;
}

std::size_t WeakMarking::weak_neuron_count(std::size_t layer) const {
  std::size_t n = 0;
  for (bool w : weak_neurons.at(layer)) n += w ? 1 : 0;
  return n;
}

bool WeakMarking::operator==(const WeakMarking& other) const {
  if (weak_neurons != other.weak_neurons || weak_links.size() != other.weak_links.size()) return false;
  for (std::size_t l = 0; l < weak_links.size(); ++l) {
    if (weak_links[l].rows() != other.weak_links[l].rows() || weak_links[l].cols() != other.weak_links[l].cols())
      return false;
    if (weak_links[l] != other.weak_links[l]) return false;
  }
  return true;
}

ThresholdMap init_thresholds(const Network& net, double c0) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw std::invalid_argument("init_thresholds: c0 must lie in (0, 1)");
  constexpr double kFloor = 64.0 * std::numeric_limits<double>::epsilon();
  ThresholdMap map;
  for (const auto& w : net.weights) {
    Eigen::VectorXd delta(w.cols());
    for (Eigen::Index t = 0; t < w.cols(); ++t) {
      delta(t) = c0 * w.col(t).cwiseAbs().mean();
      if (!(delta(t) > 0.0)) {
        delta(t) = kFloor;
        ++map.floored;
      }
    }
    map.base.push_back(std::move(delta));
  }
  return map;
}

WeakMarking mark_weak(const Network& net, const ThresholdMap& thresholds) {
  const std::size_t layers = net.layers();
  if (thresholds.base.size() + 1 != layers) throw ShapeError("threshold map does not match the network depth");

  WeakMarking marking;
  marking.rounds_used = thresholds.escalation_round;
  marking.weak_links.resize(layers - 1);
  marking.weak_neurons.resize(layers);
  marking.weak_neurons[layers - 1].assign(net.structure.layer_sizes.back(), false);

  for (std::size_t l = layers - 1; l-- > 0;) {
    const auto& w = net.weights[l];
    if (thresholds.base[l].size() != w.cols()) throw ShapeError("threshold map does not match layer width");
    const Eigen::VectorXd t = thresholds.layer(l + 1);
    const auto& target_weak = marking.weak_neurons[l + 1];
    auto& links = marking.weak_links[l];
    links.resize(w.rows(), w.cols());
    auto& source_weak = marking.weak_neurons[l];
    source_weak.assign(static_cast<std::size_t>(w.rows()), false);
    for (Eigen::Index s = 0; s < w.rows(); ++s) {
      bool all_weak = true;
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        const bool weak = std::abs(w(s, c)) < t(c) || target_weak[static_cast<std::size_t>(c)];
        links(s, c) = weak;
        all_weak = all_weak && weak;
      }
      source_weak[static_cast<std::size_t>(s)] = all_weak;
    }
  }
  return marking;
}

FeatureImportanceReport find_least_important_feature(const Network& net, const EncodedDataset& encoding,
                                                     const CostProfile& profile, const PruneConfig& cfg,
                                                     const MarkingObserver& observer) {
  net.structure.validate();
  if (net.structure.input_size() != encoding.columns())
    throw ShapeError("network has " + std::to_string(net.structure.input_size()) + " inputs, encoding has " +
                     std::to_string(encoding.columns()) + " columns");
  if (encoding.active_features.empty()) throw std::invalid_argument("no active features to choose from");
  if (!net.all_finite()) throw PruneError("network has non-finite weights");

  std::map<FeatureId, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < encoding.column_feature.size(); ++c) groups[encoding.column_feature[c]].push_back(c);
  for (auto id : encoding.active_features) profile.cost(id);

  const ThresholdMap base = init_thresholds(net, cfg.c0);
  for (int round = 0; round <= cfg.max_rounds; ++round) {
    const ThresholdMap thresholds = base.escalated(round);
    const WeakMarking marking = mark_weak(net, thresholds);
    const auto& inputs = marking.weak_neurons.front();

    FeatureSet weak_features;
    for (const auto& [id, cols] : groups) {
      bool all = true;
      for (auto c : cols) all = all && inputs[c];
      if (all) weak_features.insert(id);
    }
    if (observer) observer(MarkingRound{thresholds, marking, weak_features});
    if (weak_features.empty()) continue;

    FeatureImportanceReport report;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (inputs[i]) report.weak_input_neurons.push_back(i);
    report.weak_features = weak_features;
    report.thresholds_final = thresholds;
    report.rounds_used = round;
    Cost best = -1;
    for (auto id : weak_features) {  // ascending id: strict > keeps the lowest id on ties
      const Cost c = profile.cost(id);
      if (c > best) {
        best = c;
        report.selected_feature = id;
      }
    }
    return report;
  }
  throw PruneError("no weak input feature after " + std::to_string(cfg.max_rounds) + " escalation rounds");
}

std::string marking_round_json(const MarkingRound& round, const EncodedDataset& encoding) {
  using nlohmann::json;
  json layers = json::array();
  const auto& marking = round.marking;
  for (std::size_t l = 0; l < marking.weak_neurons.size(); ++l) {
    json layer;
    layer["layer"] = l;
    std::vector<std::size_t> weak;
    for (std::size_t n = 0; n < marking.weak_neurons[l].size(); ++n)
      if (marking.weak_neurons[l][n]) weak.push_back(n);
    layer["weak_neurons"] = weak;
    if (l > 0) {
      const Eigen::VectorXd t = round.thresholds.layer(l);
      layer["thresholds"] = std::vector<double>(t.data(), t.data() + t.size());
    }
    if (l + 1 < marking.weak_neurons.size()) {
      const auto& links = marking.weak_links[l];
      json weak_links = json::array();
      for (Eigen::Index s = 0; s < links.rows(); ++s)
        for (Eigen::Index t = 0; t < links.cols(); ++t)
          if (links(s, t)) weak_links.push_back({s, t});
      layer["weak_link_count"] = weak_links.size();
      layer["weak_links"] = std::move(weak_links);
    }
    layers.push_back(std::move(layer));
  }
  std::vector<std::string> weak_inputs;
  for (std::size_t c = 0; c < marking.weak_neurons.front().size(); ++c)
    if (marking.weak_neurons.front()[c] && c < encoding.column_names.size()) weak_inputs.push_back(encoding.column_names[c]);
  json doc = {{"escalation_round", round.thresholds.escalation_round},
              {"weak_input_columns", weak_inputs},
              {"weak_features", std::vector<FeatureId>(round.weak_features.begin(), round.weak_features.end())},
              {"layers", std::move(layers)}};
  return doc.dump();
}

}  // namespace bcm
