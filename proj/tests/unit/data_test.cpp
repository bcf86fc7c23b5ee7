#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bcm/costs.hpp"
#include "bcm/dataset.hpp"
#include "bcm/encoding.hpp"
#include "bcm/folds.hpp"
#include "bcm/schema.hpp"
#include "bcm/synthetic.hpp"

namespace bcm {
namespace {

const char* kSchema = R"({
  "label": {"column": "Diabetes", "negative": "No", "positive": "Yes"},
  "features": [
    {"id": 1, "name": "Itching", "kind": "categorical", "categories": ["Yes", "No"]},
    {"id": 2, "name": "Age", "kind": "integer"},
    {"id": 3, "name": "Chest", "column": "chest pain", "kind": "categorical",
     "categories": ["typical", "atypical", "none"]}
  ],
  "zero_cost": ["Age"]
})";

FeatureSchema schema() { return parse_schema(kSchema); }

RawDataset parse(const std::string& text, std::size_t folds = 1) {
  std::istringstream in(text);
  return parse_csv(in, schema(), folds);
}

const char* kCsv =
    "Itching,Age,chest pain,Diabetes\n"
    "Yes,40,typical,Yes\n"
    "No,60,none,No\n"
    "Yes,50,atypical,No\n"
    "No,40,typical,Yes\n";

TEST(Schema, ParsesFeaturesInOrder) {
  const auto s = schema();
  ASSERT_EQ(s.features.size(), 3u);
  EXPECT_EQ(s.feature(3).column, "chest pain");
  EXPECT_EQ(s.feature(2).kind, FeatureKind::kInteger);
  EXPECT_EQ(s.id_of("Itching"), 1);
  EXPECT_EQ(s.all_ids(), (FeatureSet{1, 2, 3}));
  EXPECT_EQ(s.zero_cost, std::vector<std::string>{"Age"});
}

TEST(Schema, RejectsGapsInIds) {
  EXPECT_THROW(parse_schema(R"({"label": {"column": "y", "negative": "0", "positive": "1"},
    "features": [{"id": 1, "name": "a", "kind": "integer"}, {"id": 3, "name": "b", "kind": "integer"}]})"),
               DataError);
}

TEST(Schema, RejectsSingleCategory) {
  EXPECT_THROW(parse_schema(R"({"label": {"column": "y", "negative": "0", "positive": "1"},
    "features": [{"id": 1, "name": "a", "kind": "categorical", "categories": ["x"]}]})"),
               DataError);
}

TEST(Schema, RejectsCategoriesOnIntegers) {
  EXPECT_THROW(parse_schema(R"({"label": {"column": "y", "negative": "0", "positive": "1"},
    "features": [{"id": 1, "name": "a", "kind": "integer", "categories": ["x", "y"]}]})"),
               DataError);
}

TEST(Schema, RoundTripsThroughJson) {
  const auto s = schema();
  const auto again = parse_schema(schema_to_json(s));
  EXPECT_EQ(schema_to_json(again), schema_to_json(s));
}

TEST(Csv, LoadsCleanRows) {
  const auto raw = parse(kCsv);
  EXPECT_EQ(raw.rows(), 4u);
  EXPECT_EQ(raw.dropped_rows, 0u);
  EXPECT_EQ(raw.labels, (std::vector<int>{1, 0, 0, 1}));
  EXPECT_EQ(raw.numbers(2), (std::vector<double>{40, 60, 50, 40}));
  EXPECT_EQ(raw.text(3)[2], "atypical");
}

TEST(Csv, DropsRowWithEmptyLabel) {
  const auto raw = parse(std::string(kCsv) + "Yes,33,none,\n");
  EXPECT_EQ(raw.rows(), 4u);
  EXPECT_EQ(raw.dropped_rows, 1u);
}

TEST(Csv, DropsMissingAndUnparseableCells) {
  const auto raw = parse(std::string(kCsv) + "?,33,none,No\nYes,abc,none,No\nYes,33,none\nNo,NA,none,Yes\n");
  EXPECT_EQ(raw.rows(), 4u);
  EXPECT_EQ(raw.dropped_rows, 4u);
}

TEST(Csv, DropsUnknownLabelValue) {
  const auto raw = parse(std::string(kCsv) + "Yes,33,none,Maybe\n");
  EXPECT_EQ(raw.dropped_rows, 1u);
}

TEST(Csv, HeaderMissingFeatureIsAnError) {
  EXPECT_THROW(parse("Itching,chest pain,Diabetes\nYes,typical,Yes\n"), DataError);
}

TEST(Csv, MissingLabelColumnIsAnError) {
  EXPECT_THROW(parse("Itching,Age,chest pain\nYes,1,typical\n"), DataError);
}

TEST(Csv, TooFewRowsForFoldsIsAnError) {
  EXPECT_NO_THROW(parse(kCsv, 2));
  EXPECT_THROW(parse(kCsv, 3), DataError);
}

TEST(Csv, MissingFileIsAnError) { EXPECT_THROW(load_csv("/nonexistent/file.csv", schema()), DataError); }

TEST(Csv, ExtraColumnsAndQuotedCellsAreAccepted) {
  const auto raw = parse("id,Itching,\"chest pain\",Age,Diabetes\n7,Yes,\"typical\",40,Yes\n8,No,none,41,No\n");
  EXPECT_EQ(raw.rows(), 2u);
  EXPECT_EQ(raw.text(3)[0], "typical");
}

TEST(Csv, WriteThenParseIsIdentity) {
  const auto raw = parse(kCsv);
  std::ostringstream out;
  write_csv(out, schema(), raw);
  const auto again = parse(out.str());
  EXPECT_EQ(again.labels, raw.labels);
  EXPECT_EQ(again.numbers(2), raw.numbers(2));
  EXPECT_EQ(again.text(1), raw.text(1));
}

TEST(Encode, OneHotInDeclaredOrder) {
  const auto enc = encode(parse(kCsv), schema(), {1});
  ASSERT_EQ(enc.columns(), 2u);
  EXPECT_EQ(enc.column_names[0], "Itching_Yes");
  EXPECT_EQ(enc.column_names[1], "Itching_No");
  EXPECT_EQ(enc.matrix(0, 0), 1.0);
  EXPECT_EQ(enc.matrix(0, 1), 0.0);
  EXPECT_EQ(enc.matrix(1, 0), 0.0);
  EXPECT_EQ(enc.matrix(1, 1), 1.0);
}

TEST(Encode, IntegerColumnsAreMinMaxScaled) {
  const auto enc = encode(parse(kCsv), schema(), {2});
  ASSERT_EQ(enc.columns(), 1u);
  EXPECT_DOUBLE_EQ(enc.matrix(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(enc.matrix(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(enc.matrix(2, 0), 0.5);
}

TEST(Encode, ConstantIntegerColumnBecomesZero) {
  const auto raw = parse("Itching,Age,chest pain,Diabetes\nYes,5,none,Yes\nNo,5,none,No\n");
  const auto enc = encode(raw, schema(), {2});
  EXPECT_EQ(enc.matrix.col(0).cwiseAbs().sum(), 0.0);
}

TEST(Encode, EmptyActiveSetKeepsLabels) {
  const auto enc = encode(parse(kCsv), schema(), {});
  EXPECT_EQ(enc.columns(), 0u);
  EXPECT_EQ(enc.rows(), 4u);
  EXPECT_EQ(enc.labels.sum(), 2.0);
}

TEST(Encode, ColumnMapIsConsistent) {
  const auto enc = encode(parse(kCsv), schema(), {1, 2, 3});
  ASSERT_EQ(enc.columns(), 6u);
  EXPECT_EQ(enc.columns_of(1).size(), 2u);
  EXPECT_EQ(enc.columns_of(2).size(), 1u);
  EXPECT_EQ(enc.columns_of(3).size(), 3u);
  for (std::size_t c = 0; c < enc.columns(); ++c) EXPECT_TRUE(enc.active_features.count(enc.column_feature[c]));
}

TEST(Encode, OneHotGroupsSumToOne) {
  PlantedSpec spec;
  spec.rows = 200;
  spec.informative = 5;
  spec.categorical = 3;
  const auto planted = make_planted_dataset(spec);
  const auto enc = encode(planted.raw, planted.schema, planted.schema.all_ids());
  for (const auto& f : planted.schema.features) {
    if (f.kind != FeatureKind::kCategorical) continue;
    const auto cols = enc.columns_of(f.id);
    for (Eigen::Index r = 0; r < enc.matrix.rows(); ++r) {
      double sum = 0.0;
      for (auto c : cols) sum += enc.matrix(r, static_cast<Eigen::Index>(c));
      ASSERT_EQ(sum, 1.0);
    }
  }
}

TEST(Encode, UndeclaredCategoryIsAnError) {
  auto s = schema();
  s.features[2].categories = {"typical", "none"};
  std::istringstream in(kCsv);
  const auto raw = parse_csv(in, schema());
  EXPECT_THROW(encode(raw, s, {3}), DataError);
}

TEST(Folds, TenFoldsOf52) {
  const auto f = kfold(520, 10, 3);
  for (auto size : f.fold_sizes()) EXPECT_EQ(size, 52u);
}

TEST(Folds, EachRowItsOwnFold) {
  const auto f = kfold(10, 10, 3);
  for (auto size : f.fold_sizes()) EXPECT_EQ(size, 1u);
}

TEST(Folds, SizesDifferByAtMostOne) {
  for (std::size_t n : {11u, 37u, 100u, 297u})
    for (std::size_t k : {2u, 3u, 7u, 10u}) {
      const auto sizes = kfold(n, k, n * k).fold_sizes();
      const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
      EXPECT_LE(*hi - *lo, 1u);
    }
}

TEST(Folds, DeterministicPerSeed) {
  EXPECT_EQ(kfold(100, 5, 9).fold_of_row, kfold(100, 5, 9).fold_of_row);
  EXPECT_NE(kfold(100, 5, 9).fold_of_row, kfold(100, 5, 10).fold_of_row);
}

TEST(Folds, RowsInAndOutPartition) {
  const auto f = kfold(23, 4, 1);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(f.rows_in(i).size() + f.rows_not_in(i).size(), 23u);
}

TEST(Folds, RejectsBadArguments) {
  EXPECT_THROW(kfold(5, 6, 1), std::invalid_argument);
  EXPECT_THROW(kfold(5, 1, 1), std::invalid_argument);
}

TEST(Costs, ZeroCostFeaturesAndRange) {
  const auto s = schema();
  const auto p = sample_costs(s, 100, 300, {2}, 42);
  EXPECT_EQ(p.cost(2), 0);
  for (auto id : {1, 3}) {
    EXPECT_GE(p.cost(id), 100);
    EXPECT_LE(p.cost(id), 300);
  }
}

TEST(Costs, DegenerateRange) {
  const auto p = sample_costs(schema(), 200, 200, {}, 1);
  for (const auto& [id, c] : p.costs) EXPECT_EQ(c, 200);
}

TEST(Costs, DeterministicPerSeed) {
  EXPECT_EQ(sample_costs(schema(), 100, 300, {}, 5).costs, sample_costs(schema(), 100, 300, {}, 5).costs);
}

TEST(Costs, UnknownZeroCostIdIsAnError) { EXPECT_THROW(sample_costs(schema(), 100, 300, {9}, 1), DataError); }

TEST(Costs, EveryValueInRangeIsReachable) {
  PlantedSpec spec;
  spec.informative = 60;
  spec.noise = 0;
  const auto planted = make_planted_dataset(spec);
  std::set<Cost> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (const auto& [id, c] : sample_costs(planted.schema, 0, 3, {}, seed).costs) seen.insert(c);
  EXPECT_EQ(seen, (std::set<Cost>{0, 1, 2, 3}));
}

TEST(Costs, CsvRoundTrip) {
  const auto s = schema();
  const auto p = sample_costs(s, 100, 300, {2}, 8);
  std::stringstream io;
  write_cost_csv(io, s, p);
  EXPECT_EQ(io.str().substr(0, 18), "feature_name,cost\n");
  const auto q = read_cost_csv(io, s);
  EXPECT_EQ(q.costs, p.costs);
}

TEST(Costs, CsvRejectsMissingAndNegativeEntries) {
  std::istringstream missing("feature_name,cost\nItching,5\n");
  EXPECT_THROW(read_cost_csv(missing, schema()), DataError);
  std::istringstream negative("feature_name,cost\nItching,5\nAge,-1\nChest,3\n");
  EXPECT_THROW(read_cost_csv(negative, schema()), DataError);
}

TEST(ModelCost, Examples) {
  CostProfile p;
  p.costs = {{1, 100}, {2, 200}, {3, 300}};
  EXPECT_EQ(model_cost({}, p), 0);
  p.costs[1] = 250;
  EXPECT_EQ(model_cost({1}, p), 250);
  p.costs[1] = 100;
  EXPECT_EQ(model_cost({1, 2, 3}, p), 600);
  EXPECT_THROW(model_cost({4}, p), DataError);
}

TEST(ModelCost, MonotoneAndAdditive) {
  std::mt19937_64 gen(11);
  CostProfile p;
  for (int id = 1; id <= 12; ++id) p.costs[id] = static_cast<Cost>(gen() % 301);
  for (int trial = 0; trial < 500; ++trial) {
    FeatureSet a, b;
    for (int id = 1; id <= 12; ++id) {
      const auto r = gen() % 3;
      if (r == 0) a.insert(id);
      if (r == 1) b.insert(id);
    }
    FeatureSet both = a;
    both.insert(b.begin(), b.end());
    EXPECT_EQ(model_cost(both, p), model_cost(a, p) + model_cost(b, p));
    EXPECT_LE(model_cost(a, p), model_cost(both, p));
  }
}

TEST(Synthetic, NoiseFeaturesAndBalancedLabels) {
  PlantedSpec spec;
  spec.rows = 101;
  const auto planted = make_planted_dataset(spec);
  EXPECT_EQ(planted.schema.features.size(), 10u);
  EXPECT_EQ(planted.noise_ids, (std::vector<FeatureId>{9, 10}));
  const auto positives = std::count(planted.raw.labels.begin(), planted.raw.labels.end(), 1);
  EXPECT_NEAR(static_cast<double>(positives), 50.5, 1.0);
}

TEST(Synthetic, DeterministicPerSeed) {
  PlantedSpec spec;
  spec.categorical = 2;
  const auto a = make_planted_dataset(spec);
  const auto b = make_planted_dataset(spec);
  std::ostringstream sa, sb;
  write_csv(sa, a.schema, a.raw);
  write_csv(sb, b.schema, b.raw);
  EXPECT_EQ(sa.str(), sb.str());
}

}  // namespace
}  // namespace bcm
