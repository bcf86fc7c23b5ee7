#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bcm/schema.hpp"

namespace bcm {

/// Categorical cells keep their text (validated at encode time); integer
/// cells are parsed to double.
using RawColumn = std::variant<std::vector<std::string>, std::vector<double>>;

/// Typed rows of a CSV table, one column per schema feature in schema order.
struct RawDataset {
  std::vector<RawColumn> columns;
  std::vector<int> labels;  // 0 = label_values[0], 1 = label_values[1]
  std::size_t dropped_rows = 0;

  std::size_t rows() const { return labels.size(); }

  const std::vector<std::string>& text(FeatureId id) const;
  const std::vector<double>& numbers(FeatureId id) const;

  RawDataset select_rows(const std::vector<std::size_t>& rows) const;
};

/// Reads a comma separated table with a header row. Rows with an empty, "?"
/// or "NA" cell, an unparseable integer cell, or a label outside the two
/// declared values are dropped and counted. Fails when fewer than
/// `2 * folds` rows survive.
RawDataset parse_csv(std::istream& in, const FeatureSchema& schema, std::size_t folds = 1);
RawDataset load_csv(const std::filesystem::path& path, const FeatureSchema& schema,
                    std::size_t folds = 1);

/// Writes the table back out with the schema's column headers.
void write_csv(std::ostream& out, const FeatureSchema& schema, const RawDataset& data);

/// Splits one CSV record; supports double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace bcm
