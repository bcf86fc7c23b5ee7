#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bcm/costs.hpp"
#include "bcm/schema.hpp"

namespace bcm {

enum class RemovalStrategy { kWeakNeuron, kCostBased, kRandom };

inline constexpr RemovalStrategy kAllStrategies[] = {RemovalStrategy::kWeakNeuron, RemovalStrategy::kCostBased,
                                                     RemovalStrategy::kRandom};

std::string_view to_string(RemovalStrategy strategy);
/// Accepts "weak_neuron", "cost_based", "random".
RemovalStrategy parse_strategy(std::string_view name);

/// Most expensive feature; ties go to the lowest id.
FeatureId remove_cost_based(const FeatureSet& features, const CostProfile& profile);

/// Uniform draw from `features`, a pure function of (features, seed, step).
FeatureId remove_random(const FeatureSet& features, std::uint64_t seed, std::size_t step);

}  // namespace bcm
