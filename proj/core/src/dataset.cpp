#include "bcm/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace bcm {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "?" || cell == "NA"; }

bool parse_number(const std::string& cell, double& value) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(std::move(cell)));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(trim(std::move(cell)));
  return cells;
}

const std::vector<std::string>& RawDataset::text(FeatureId id) const {
  return std::get<std::vector<std::string>>(columns.at(static_cast<std::size_t>(id - 1)));
}

const std::vector<double>& RawDataset::numbers(FeatureId id) const {
  return std::get<std::vector<double>>(columns.at(static_cast<std::size_t>(id - 1)));
}

RawDataset RawDataset::select_rows(const std::vector<std::size_t>& rows) const {
  RawDataset out;
  out.columns.reserve(columns.size());
  for (const auto& column : columns) {
    std::visit(
        [&](const auto& values) {
          std::decay_t<decltype(values)> picked;
          picked.reserve(rows.size());
          for (auto r : rows) picked.push_back(values.at(r));
          out.columns.emplace_back(std::move(picked));
        },
        column);
  }
  out.labels.reserve(rows.size());
  for (auto r : rows) out.labels.push_back(labels.at(r));
  return out;
}

RawDataset parse_csv(std::istream& in, const FeatureSchema& schema, std::size_t folds) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV input is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_csv_line(line);

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) position.emplace(header[i], i);

  std::vector<std::size_t> feature_pos;
  for (const auto& f : schema.features) {
    auto it = position.find(f.column);
    if (it == position.end()) throw DataError("CSV header is missing column '" + f.column + "'");
    feature_pos.push_back(it->second);
  }
  auto label_it = position.find(schema.label_column);
  if (label_it == position.end())
    throw DataError("CSV header is missing label column '" + schema.label_column + "'");
  const std::size_t label_pos = label_it->second;

  RawDataset data;
  for (const auto& f : schema.features) {
    if (f.kind == FeatureKind::kCategorical) {
      data.columns.emplace_back(std::vector<std::string>{});
    } else {
      data.columns.emplace_back(std::vector<double>{});
    }
  }

  std::vector<double> parsed(schema.size());
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      ++data.dropped_rows;
      continue;
    }
    const auto& label_cell = cells[label_pos];
    int label = -1;
    if (label_cell == schema.label_values[0]) label = 0;
    if (label_cell == schema.label_values[1]) label = 1;
    bool ok = label >= 0;
    for (std::size_t j = 0; ok && j < schema.size(); ++j) {
      const auto& cell = cells[feature_pos[j]];
      if (is_missing(cell)) ok = false;
      else if (schema.features[j].kind == FeatureKind::kInteger) ok = parse_number(cell, parsed[j]);
    }
    if (!ok) {
      ++data.dropped_rows;
      continue;
    }
    for (std::size_t j = 0; j < schema.size(); ++j) {
      const auto& cell = cells[feature_pos[j]];
      if (schema.features[j].kind == FeatureKind::kCategorical) {
        std::get<std::vector<std::string>>(data.columns[j]).push_back(cell);
      } else {
        std::get<std::vector<double>>(data.columns[j]).push_back(parsed[j]);
      }
    }
    data.labels.push_back(label);
  }

  if (data.rows() < 2 * folds)
    throw DataError("only " + std::to_string(data.rows()) + " usable rows; need at least " +
                    std::to_string(2 * folds));
  return data;
}

RawDataset load_csv(const std::filesystem::path& path, const FeatureSchema& schema,
                    std::size_t folds) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return parse_csv(in, schema, folds);
}

void write_csv(std::ostream& out, const FeatureSchema& schema, const RawDataset& data) {
  for (const auto& f : schema.features) out << quote_if_needed(f.column) << ',';
  out << quote_if_needed(schema.label_column) << '\n';
  char buf[32];
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (const auto& f : schema.features) {
      if (f.kind == FeatureKind::kCategorical) {
        out << quote_if_needed(data.text(f.id)[r]) << ',';
      } else {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), data.numbers(f.id)[r]);
        out.write(buf, ptr - buf);
        out << ',';
      }
    }
    out << quote_if_needed(schema.label_values[static_cast<std::size_t>(data.labels[r])]) << '\n';
  }
}

}  // namespace bcm
