#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bcm/dataset.hpp"
#include "bcm/schema.hpp"

namespace bcm {

/// Numeric design matrix ready for the network.
///
/// Columns are grouped by logical feature in ascending id order. A categorical
/// feature owns one column per declared category (one-hot, declaration order);
/// an integer feature owns a single column min-max scaled to [0, 1].
struct EncodedDataset {
  Eigen::MatrixXd matrix;  // rows x columns
  Eigen::VectorXd labels;  // 0.0 or 1.0
  std::vector<FeatureId> column_feature;
  std::vector<std::string> column_names;
  FeatureSet active_features;

  std::size_t rows() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t columns() const { return static_cast<std::size_t>(matrix.cols()); }

  /// Input columns owned by `id`, ascending.
  std::vector<std::size_t> columns_of(FeatureId id) const;

  EncodedDataset select_rows(const std::vector<std::size_t>& rows) const;
};

/// Throws DataError for an unknown active id or a categorical value outside
/// the declared categories.
EncodedDataset encode(const RawDataset& raw, const FeatureSchema& schema, const FeatureSet& active);

}  // namespace bcm
