#include "bcm/removal.hpp"

#include <iterator>
#include <stdexcept>
#include <string>

#include "bcm/random.hpp"

namespace bcm {

std::string_view to_string(RemovalStrategy strategy) {
  switch (strategy) {
    case RemovalStrategy::kWeakNeuron: return "weak_neuron";
    case RemovalStrategy::kCostBased: return "cost_based";
    case RemovalStrategy::kRandom: return "random";
  }
  return "unknown";
}

RemovalStrategy parse_strategy(std::string_view name) {
  for (auto s : kAllStrategies)
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown removal strategy '" + std::string(name) + "'");
}

FeatureId remove_cost_based(const FeatureSet& features, const CostProfile& profile) {
  if (features.empty()) throw std::invalid_argument("remove_cost_based: empty feature set");
  FeatureId best = *features.begin();
  Cost best_cost = profile.cost(best);
  for (auto id : features) {
    const Cost c = profile.cost(id);
    if (c > best_cost) {
      best = id;
      best_cost = c;
    }
  }
  return best;
}

FeatureId remove_random(const FeatureSet& features, std::uint64_t seed, std::size_t step) {
  if (features.empty()) throw std::invalid_argument("remove_random: empty feature set");
  Rng rng(derive_seed(seed, 0x72656D00 + step));
  const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(features.size()) - 1);
  return *std::next(features.begin(), pick);
}

}  // namespace bcm
