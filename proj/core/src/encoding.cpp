#include "bcm/encoding.hpp"

#include <algorithm>

namespace bcm {

std::vector<std::size_t> EncodedDataset::columns_of(FeatureId id) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < column_feature.size(); ++c)
    if (column_feature[c] == id) out.push_back(c);
  return out;
}

EncodedDataset EncodedDataset::select_rows(const std::vector<std::size_t>& rows) const {
  EncodedDataset out;
  out.matrix.resize(static_cast<Eigen::Index>(rows.size()), matrix.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(rows[i]);
    out.matrix.row(static_cast<Eigen::Index>(i)) = matrix.row(r);
    out.labels(static_cast<Eigen::Index>(i)) = labels(r);
  }
  out.column_feature = column_feature;
  out.column_names = column_names;
  out.active_features = active_features;
  return out;
}

EncodedDataset encode(const RawDataset& raw, const FeatureSchema& schema, const FeatureSet& active) {
  for (auto id : active) schema.feature(id);

  std::size_t width = 0;
  for (auto id : active) {
    const auto& f = schema.feature(id);
    width += f.kind == FeatureKind::kCategorical ? f.categories.size() : 1;
  }

  const auto n = static_cast<Eigen::Index>(raw.rows());
  EncodedDataset out;
  out.active_features = active;
  out.matrix = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(width));
  out.labels.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) out.labels(r) = raw.labels[static_cast<std::size_t>(r)];

  Eigen::Index col = 0;
  for (auto id : active) {
    const auto& f = schema.feature(id);
    if (f.kind == FeatureKind::kCategorical) {
      const auto& cells = raw.text(id);
      for (Eigen::Index r = 0; r < n; ++r) {
        const auto& cell = cells[static_cast<std::size_t>(r)];
        auto it = std::find(f.categories.begin(), f.categories.end(), cell);
        if (it == f.categories.end())
          throw DataError("feature '" + f.name + "': value '" + cell + "' is not a declared category");
        out.matrix(r, col + (it - f.categories.begin())) = 1.0;
      }
      for (const auto& category : f.categories) {
        out.column_feature.push_back(id);
        out.column_names.push_back(f.name + "_" + category);
      }
      col += static_cast<Eigen::Index>(f.categories.size());
    } else {
      const auto& values = raw.numbers(id);
      double lo = 0.0;
      double hi = 0.0;
      if (!values.empty()) {
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        lo = *mn;
        hi = *mx;
      }
      // Constant column: min == max scales to 0.
      const double range = hi - lo;
      for (Eigen::Index r = 0; r < n; ++r)
        out.matrix(r, col) = range > 0.0 ? (values[static_cast<std::size_t>(r)] - lo) / range : 0.0;
      out.column_feature.push_back(id);
      out.column_names.push_back(f.name);
      ++col;
    }
  }
  return out;
}

}  // namespace bcm
