#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>

#include "bcm/schema.hpp"

namespace bcm {

using Cost = std::int64_t;

/// Measurement cost per logical feature.
struct CostProfile {
  std::map<FeatureId, Cost> costs;
  std::uint64_t seed = 0;
  Cost range_lo = 0;
  Cost range_hi = 0;
  FeatureSet zero_cost_ids;

  Cost cost(FeatureId id) const;
  Cost total() const;
};

/// Each non-exempt feature draws uniformly from the integers [lo, hi] on its
/// own sub-stream of `seed`; exempt features cost 0.
CostProfile sample_costs(const FeatureSchema& schema, Cost lo, Cost hi, const FeatureSet& zero_cost_ids,
                         std::uint64_t seed);

/// Sum of c(f) over the logical features; a one-hot group is charged once.
Cost model_cost(const FeatureSet& features, const CostProfile& profile);

/// Two-column CSV: feature_name,cost.
void write_cost_csv(std::ostream& out, const FeatureSchema& schema, const CostProfile& profile);
CostProfile read_cost_csv(std::istream& in, const FeatureSchema& schema);
CostProfile load_cost_csv(const std::filesystem::path& path, const FeatureSchema& schema);

}  // namespace bcm
