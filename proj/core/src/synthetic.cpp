#include "bcm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bcm/random.hpp"

namespace bcm {

namespace {

constexpr const char* kLevels[] = {"low", "mid", "high"};

}  // namespace

PlantedDataset make_planted_dataset(const PlantedSpec& spec) {
  if (spec.informative == 0) throw std::invalid_argument("planted dataset needs an informative feature");
  if (spec.categorical > spec.informative)
    throw std::invalid_argument("planted dataset: more categorical than informative features");
  if (spec.rows < 4) throw std::invalid_argument("planted dataset needs at least 4 rows");
  if (spec.value_max < 1) throw std::invalid_argument("planted dataset: value_max must be positive");

  PlantedDataset out;
  auto& schema = out.schema;
  const std::size_t m = spec.informative + spec.noise;
  for (std::size_t i = 0; i < m; ++i) {
    FeatureSpec f;
    f.id = static_cast<FeatureId>(i + 1);
    const bool informative = i < spec.informative;
    f.name = (informative ? "x" : "noise") + std::to_string(informative ? i + 1 : i - spec.informative + 1);
    f.column = f.name;
    if (informative && i < spec.categorical) {
      f.kind = FeatureKind::kCategorical;
      f.categories.assign(std::begin(kLevels), std::end(kLevels));
    } else {
      f.kind = FeatureKind::kInteger;
    }
    schema.features.push_back(std::move(f));
    if (!informative) out.noise_ids.push_back(static_cast<FeatureId>(i + 1));
  }
  schema.label_column = "label";
  schema.label_values = {"neg", "pos"};

  Rng coef_rng(derive_seed(spec.seed, 1));
  for (std::size_t i = 0; i < spec.informative; ++i) {
    const double sign = coef_rng.uniform01() < 0.5 ? -1.0 : 1.0;
    out.coefficients.push_back(sign / std::sqrt(static_cast<double>(i + 1)));
  }

  // Centred values in [-0.5, 0.5] drive the rule; raw cells keep the
  // integer / category form a real table would have.
  Rng value_rng(derive_seed(spec.seed, 2));
  std::vector<std::vector<double>> centred(m, std::vector<double>(spec.rows));
  for (std::size_t i = 0; i < m; ++i) {
    const bool cat = i < spec.categorical;
    std::vector<std::string> text;
    std::vector<double> numbers;
    for (std::size_t r = 0; r < spec.rows; ++r) {
      if (cat) {
        const auto level = value_rng.uniform_int(0, 2);
        text.emplace_back(kLevels[level]);
        centred[i][r] = static_cast<double>(level) / 2.0 - 0.5;
      } else {
        const auto v = value_rng.uniform_int(0, spec.value_max);
        numbers.push_back(static_cast<double>(v));
        centred[i][r] = static_cast<double>(v) / spec.value_max - 0.5;
      }
    }
    if (cat) out.raw.columns.emplace_back(std::move(text));
    else out.raw.columns.emplace_back(std::move(numbers));
  }

  std::vector<double> score(spec.rows, 0.0);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t i = 0; i < spec.informative; ++i) score[r] += out.coefficients[i] * centred[i][r];
    if (spec.rule == PlantedRule::kQuadratic && spec.informative >= 2)
      score[r] += 2.0 * centred[0][r] * centred[1][r];
  }
  auto sorted = score;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(spec.rows / 2), sorted.end());
  const double median = sorted[spec.rows / 2];

  Rng flip_rng(derive_seed(spec.seed, 3));
  for (std::size_t r = 0; r < spec.rows; ++r) {
    int label = score[r] >= median ? 1 : 0;
    if (spec.label_noise > 0.0 && flip_rng.uniform01() < spec.label_noise) label = 1 - label;
    out.raw.labels.push_back(label);
  }
  schema.validate();
  return out;
}

}  // namespace bcm
