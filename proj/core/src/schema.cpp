#include "bcm/schema.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bcm {

using nlohmann::json;

std::string_view to_string(FeatureKind kind) {
  return kind == FeatureKind::kCategorical ? "categorical" : "integer";
}

const FeatureSpec& FeatureSchema::feature(FeatureId id) const {
  if (id < 1 || static_cast<std::size_t>(id) > features.size())
    throw DataError("unknown feature id " + std::to_string(id));
  return features[static_cast<std::size_t>(id - 1)];
}

const FeatureSpec* FeatureSchema::find(std::string_view name) const {
  for (const auto& f : features)
    if (f.name == name) return &f;
  return nullptr;
}

FeatureId FeatureSchema::id_of(std::string_view name) const {
  if (const auto* f = find(name)) return f->id;
  throw DataError("unknown feature name '" + std::string(name) + "'");
}

FeatureSet FeatureSchema::all_ids() const {
  FeatureSet ids;
  for (const auto& f : features) ids.insert(f.id);
  return ids;
}

void FeatureSchema::validate() const {
  if (features.empty()) throw DataError("schema declares no features");
  std::set<std::string> names;
  std::set<std::string> columns;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    if (f.id != static_cast<FeatureId>(i + 1))
      throw DataError("feature ids must be contiguous from 1 in declaration order (got " +
                      std::to_string(f.id) + " at position " + std::to_string(i + 1) + ")");
    if (f.name.empty()) throw DataError("feature " + std::to_string(f.id) + " has no name");
    if (!names.insert(f.name).second) throw DataError("duplicate feature name '" + f.name + "'");
    if (!columns.insert(f.column).second)
      throw DataError("duplicate feature column '" + f.column + "'");
    if (f.kind == FeatureKind::kCategorical) {
      if (f.categories.size() < 2)
        throw DataError("categorical feature '" + f.name + "' needs at least 2 categories");
      std::set<std::string> cats(f.categories.begin(), f.categories.end());
      if (cats.size() != f.categories.size())
        throw DataError("categorical feature '" + f.name + "' repeats a category");
    } else if (!f.categories.empty()) {
      throw DataError("integer feature '" + f.name + "' must not list categories");
    }
  }
  if (label_column.empty()) throw DataError("schema has no label column");
  if (columns.count(label_column)) throw DataError("label column is also a feature column");
  if (label_values[0].empty() || label_values[1].empty() || label_values[0] == label_values[1])
    throw DataError("label needs two distinct values");
  for (const auto& z : zero_cost) id_of(z);
}

FeatureSchema parse_schema(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("schema is not valid JSON: ") + e.what());
  }
  FeatureSchema schema;
  try {
    const auto& label = doc.at("label");
    schema.label_column = label.at("column").get<std::string>();
    schema.label_values = {label.at("negative").get<std::string>(),
                           label.at("positive").get<std::string>()};
    for (const auto& jf : doc.at("features")) {
      FeatureSpec f;
      f.id = jf.at("id").get<int>();
      f.name = jf.at("name").get<std::string>();
      f.column = jf.value("column", f.name);
      const auto kind = jf.at("kind").get<std::string>();
      if (kind == "categorical") {
        f.kind = FeatureKind::kCategorical;
      } else if (kind == "integer") {
        f.kind = FeatureKind::kInteger;
      } else {
        throw DataError("feature '" + f.name + "': unknown kind '" + kind + "'");
      }
      if (jf.contains("categories")) f.categories = jf.at("categories").get<std::vector<std::string>>();
      schema.features.push_back(std::move(f));
    }
    if (doc.contains("zero_cost")) schema.zero_cost = doc.at("zero_cost").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed schema: ") + e.what());
  }
  schema.validate();
  return schema;
}

FeatureSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_schema(buffer.str());
}

std::string schema_to_json(const FeatureSchema& schema) {
  json doc;
  doc["label"] = {{"column", schema.label_column},
                  {"negative", schema.label_values[0]},
                  {"positive", schema.label_values[1]}};
  json features = json::array();
  for (const auto& f : schema.features) {
    json jf = {{"id", f.id}, {"name", f.name}, {"column", f.column}, {"kind", to_string(f.kind)}};
    if (f.kind == FeatureKind::kCategorical) jf["categories"] = f.categories;
    features.push_back(std::move(jf));
  }
  doc["features"] = std::move(features);
  if (!schema.zero_cost.empty()) doc["zero_cost"] = schema.zero_cost;
  return doc.dump(2) + "\n";
}

}  // namespace bcm
