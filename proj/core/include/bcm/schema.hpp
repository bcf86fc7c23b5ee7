#pragma once

#include <array>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcm {

using FeatureId = int;
using FeatureSet = std::set<FeatureId>;

/// Raised for malformed inputs: schema files, CSV files, cost tables.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FeatureKind { kCategorical, kInteger };

std::string_view to_string(FeatureKind kind);

struct FeatureSpec {
  FeatureId id = 0;
  std::string name;    // short display name, e.g. "Dheal"
  std::string column;  // CSV header cell; defaults to name
  FeatureKind kind = FeatureKind::kCategorical;
  std::vector<std::string> categories;  // categorical only, in one-hot column order
};

/// Logical input features of a binary classification table.
///
/// Feature ids are 1..m in declaration order. `label_values[1]` is the
/// positive class (encoded as 1). `zero_cost` names features whose
/// measurement is free; cost sampling uses it as its default exemption list.
struct FeatureSchema {
  std::vector<FeatureSpec> features;
  std::string label_column;
  std::array<std::string, 2> label_values;
  std::vector<std::string> zero_cost;

  const FeatureSpec& feature(FeatureId id) const;
  const FeatureSpec* find(std::string_view name) const;
  FeatureId id_of(std::string_view name) const;
  FeatureSet all_ids() const;
  std::size_t size() const { return features.size(); }

  /// Throws DataError when an invariant is broken.
  void validate() const;
};

/// JSON grammar (see README):
///   { "label": {"column": str, "negative": str, "positive": str},
///     "features": [ {"id": int, "name": str, "column": str?,
///                    "kind": "categorical"|"integer", "categories": [str]?} ],
///     "zero_cost": [str]? }
FeatureSchema parse_schema(std::string_view json_text);
FeatureSchema load_schema(const std::filesystem::path& path);
std::string schema_to_json(const FeatureSchema& schema);

}  // namespace bcm
