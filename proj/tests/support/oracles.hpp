#pragma once

// Independent reference implementations shared by the unit and acceptance
// suites. Nothing here calls into the code under test beyond plain data
// types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "bcm/network.hpp"
#include "bcm/prune.hpp"

namespace bcm::oracle {

struct Marking {
  std::vector<std::vector<std::vector<bool>>> links;  // [layer][source][target]
  std::vector<std::vector<bool>> neurons;             // [layer][neuron]
};

/// Applies the two marking rules in arbitrary order until nothing changes.
/// `t[l][n]` is the threshold of neuron n in layer l (layer 0 unused).
inline Marking fixed_point_marking(const Network& net, const std::vector<std::vector<double>>& t) {
  const std::size_t L = net.layers();
  const auto& sizes = net.structure.layer_sizes;
  Marking m;
  m.neurons.resize(L);
  for (std::size_t l = 0; l < L; ++l) m.neurons[l].assign(sizes[l], false);
  m.links.resize(L - 1);
  for (std::size_t l = 0; l + 1 < L; ++l)
    m.links[l].assign(sizes[l], std::vector<bool>(sizes[l + 1], false));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t l = 0; l + 1 < L; ++l)
      for (std::size_t s = 0; s < sizes[l]; ++s)
        for (std::size_t d = 0; d < sizes[l + 1]; ++d) {
          const double w = net.weights[l](static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(d));
          const bool weak = std::fabs(w) < t[l + 1][d] || m.neurons[l + 1][d];
          if (weak && !m.links[l][s][d]) {
            m.links[l][s][d] = true;
            changed = true;
          }
        }
    // Output neurons have no outgoing links and are excluded by definition.
    for (std::size_t l = 0; l + 1 < L; ++l)
      for (std::size_t s = 0; s < sizes[l]; ++s) {
        const bool all = std::all_of(m.links[l][s].begin(), m.links[l][s].end(), [](bool b) { return b; });
        if (all && !m.neurons[l][s]) {
          m.neurons[l][s] = true;
          changed = true;
        }
      }
  }
  return m;
}

inline bool same_marking(const Marking& oracle, const WeakMarking& got) {
  if (got.weak_neurons != oracle.neurons) return false;
  if (got.weak_links.size() != oracle.links.size()) return false;
  for (std::size_t l = 0; l < oracle.links.size(); ++l) {
    const auto& g = got.weak_links[l];
    if (static_cast<std::size_t>(g.rows()) != oracle.links[l].size()) return false;
    for (std::size_t s = 0; s < oracle.links[l].size(); ++s) {
      if (static_cast<std::size_t>(g.cols()) != oracle.links[l][s].size()) return false;
      for (std::size_t d = 0; d < oracle.links[l][s].size(); ++d)
        if (g(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(d)) != oracle.links[l][s][d]) return false;
    }
  }
  return true;
}

/// Network with arbitrary weights drawn outside the library's initializer.
inline Network random_layered_network(std::mt19937_64& gen, const std::vector<std::size_t>& sizes) {
  Network net;
  net.structure.layer_sizes = sizes;
  std::uniform_real_distribution<double> w(-1.0, 1.0);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(sizes[l]), static_cast<Eigen::Index>(sizes[l + 1]));
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = w(gen);
    net.weights.push_back(std::move(m));
    net.biases.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sizes[l + 1])));
  }
  return net;
}

/// Plug-in estimate of I(X; Y) in nats for discrete codes.
inline double mutual_information(const std::vector<int>& x, const std::vector<int>& y) {
  const double n = static_cast<double>(x.size());
  std::map<int, double> px, py;
  std::map<std::pair<int, int>, double> pxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1.0;
    py[y[i]] += 1.0;
    pxy[{x[i], y[i]}] += 1.0;
  }
  double mi = 0.0;
  for (const auto& [key, c] : pxy) mi += c / n * std::log(c * n / (px[key.first] * py[key.second]));
  return mi;
}

/// Equal-width binning of a numeric column into `bins` codes.
inline std::vector<int> discretize(const std::vector<double>& v, int bins) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  std::vector<int> out(v.size(), 0);
  if (*hi == *lo) return out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = std::min(bins - 1, static_cast<int>((v[i] - *lo) / (*hi - *lo) * bins));
  return out;
}

/// Fraction of label permutations whose MI reaches the observed value.
inline double permutation_p_value(const std::vector<int>& x, std::vector<int> y, int permutations,
                                  std::uint64_t seed) {
  const double observed = mutual_information(x, y);
  std::mt19937_64 gen(seed);
  int at_least = 0;
  for (int p = 0; p < permutations; ++p) {
    std::shuffle(y.begin(), y.end(), gen);
    if (mutual_information(x, y) >= observed) ++at_least;
  }
  return (at_least + 1.0) / (permutations + 1.0);
}

}  // namespace bcm::oracle
