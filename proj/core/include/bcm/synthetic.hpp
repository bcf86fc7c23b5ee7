#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bcm/dataset.hpp"
#include "bcm/schema.hpp"

namespace bcm {

enum class PlantedRule { kLinear, kQuadratic };

struct PlantedSpec {
  std::size_t rows = 400;
  std::size_t informative = 8;
  std::size_t noise = 2;
  /// The first `categorical` informative features are 3-level categoricals.
  std::size_t categorical = 0;
  PlantedRule rule = PlantedRule::kLinear;
  /// Fraction of labels flipped after thresholding.
  double label_noise = 0.0;
  int value_max = 100;
  std::uint64_t seed = 1;
};

/// Binary classification table with a known generating rule.
///
/// Informative features come first (ids 1..informative) with strictly
/// decreasing influence; the remaining ids are noise features drawn
/// independently of everything else. The label is the planted score
/// thresholded at its median, so classes are balanced.
struct PlantedDataset {
  FeatureSchema schema;
  RawDataset raw;
  std::vector<FeatureId> noise_ids;
  std::vector<double> coefficients;  // per informative feature
};

PlantedDataset make_planted_dataset(const PlantedSpec& spec);

}  // namespace bcm
