#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "bcm/comparison.hpp"
#include "bcm/removal.hpp"
#include "bcm/synthetic.hpp"

namespace bcm {
namespace {

CostProfile costs(std::map<FeatureId, Cost> values) {
  CostProfile p;
  p.costs = std::move(values);
  return p;
}

TEST(CostBased, PicksMostExpensive) {
  EXPECT_EQ(remove_cost_based({1, 2, 3}, costs({{1, 100}, {2, 300}, {3, 200}})), 2);
}

TEST(CostBased, TiesGoToLowestId) {
  EXPECT_EQ(remove_cost_based({2, 3, 5}, costs({{2, 7}, {3, 7}, {5, 7}})), 2);
}

TEST(CostBased, SingletonAndEmpty) {
  EXPECT_EQ(remove_cost_based({4}, costs({{4, 1}})), 4);
  EXPECT_THROW(remove_cost_based({}, costs({})), std::invalid_argument);
}

TEST(Random, SingletonIgnoresSeed) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(remove_random({6}, seed, seed * 3), 6);
  EXPECT_THROW(remove_random({}, 1, 0), std::invalid_argument);
}

TEST(Random, DeterministicPerSeedAndStep) {
  const FeatureSet s{1, 2, 3, 4, 5, 6, 7};
  for (std::size_t step = 0; step < 50; ++step) EXPECT_EQ(remove_random(s, 99, step), remove_random(s, 99, step));
}

TEST(Random, RoughlyUniformOverFourFeatures) {
  const FeatureSet s{1, 2, 3, 4};
  std::map<FeatureId, int> counts;
  for (std::size_t step = 0; step < 1000; ++step) ++counts[remove_random(s, 2024, step)];
  for (auto id : s) {
    EXPECT_GE(counts[id], 200) << "feature " << id;
    EXPECT_LE(counts[id], 300) << "feature " << id;
  }
}

TEST(Strategy, NamesRoundTrip) {
  for (auto s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_THROW(parse_strategy("greedy"), std::invalid_argument);
}

struct Setup {
  PlantedDataset planted;
  CostProfile profile;
  PipelineConfig cfg;
};

Setup setup() {
  PlantedSpec spec;
  spec.rows = 90;
  spec.informative = 4;
  spec.noise = 1;
  spec.seed = 5;
  Setup s{make_planted_dataset(spec), {}, {}};
  s.profile = sample_costs(s.planted.schema, 100, 300, {}, 2);
  s.cfg.hidden = {5, 5};
  s.cfg.folds = 3;
  s.cfg.train.epochs = 8;
  s.cfg.train.seed = 17;
  return s;
}

TEST(Comparison, TopBudgetSharesTheFullModel) {
  auto s = setup();
  const std::vector<Cost> levels{s.profile.total()};
  const auto r = run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 1, s.cfg);
  const auto& wn = r.cell(RemovalStrategy::kWeakNeuron, levels[0]);
  for (auto strategy : kAllStrategies) {
    const auto& c = r.cell(strategy, levels[0]);
    EXPECT_EQ(c.best_features, s.planted.schema.all_ids());
    EXPECT_EQ(c.best_accuracy, wn.best_accuracy);
  }
}

TEST(Comparison, ReportShapeAndInvariants) {
  auto s = setup();
  const std::vector<Cost> levels{500, 900, 300, 900, 700};
  const auto r = run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 3, s.cfg);
  EXPECT_EQ(r.budget_levels, (std::vector<Cost>{900, 700, 500, 300}));
  ASSERT_EQ(r.cells.size(), 3u * 4u);
  for (const auto& c : r.cells) {
    ASSERT_EQ(c.trials.size(), 3u);
    double best = -1.0;
    for (const auto& t : c.trials) {
      if (!t.reached) continue;
      EXPECT_LE(t.model_cost, c.budget);
      EXPECT_EQ(t.model_cost, model_cost(t.features, s.profile));
      best = std::max(best, t.accuracy);
    }
    if (c.has_best) EXPECT_EQ(c.best_accuracy, best);
  }
}

TEST(Comparison, CostBasedTrialsShareFeatureSets) {
  auto s = setup();
  const std::vector<Cost> levels{800, 500};
  const auto r = run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 4, s.cfg);
  for (auto b : levels) {
    const auto& c = r.cell(RemovalStrategy::kCostBased, b);
    for (const auto& t : c.trials) EXPECT_EQ(t.features, c.trials.front().features);
  }
}

TEST(Comparison, TrialSeedsDifferAndThreadsDoNotMatter) {
  auto s = setup();
  const std::vector<Cost> levels{800, 400};
  const auto a = run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 3, s.cfg);
  auto threaded = s.cfg;
  threaded.threads = 3;
  const auto b = run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 3, threaded);
  std::ostringstream ta, tb;
  write_comparison_trials_csv(ta, a);
  write_comparison_trials_csv(tb, b);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_NE(trial_train_seed(17, 0), trial_train_seed(17, 1));
  EXPECT_NE(a.cells.front().trials[0].train_seed, a.cells.front().trials[1].train_seed);
}

TEST(Comparison, CsvLayout) {
  auto s = setup();
  const std::vector<Cost> levels{50};  // below every cost: nothing reached
  const auto r = run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 1, s.cfg,
                                std::vector<RemovalStrategy>{RemovalStrategy::kCostBased});
  std::ostringstream trials, summary;
  write_comparison_trials_csv(trials, r);
  write_comparison_summary_csv(summary, r);
  EXPECT_EQ(trials.str(), "strategy,budget,trial,accuracy,model_cost,feature_ids\ncost_based,50,0,NA,NA,\n");
  EXPECT_EQ(summary.str(), "strategy,budget,best_accuracy\ncost_based,50,NA\n");
}

TEST(Comparison, RejectsEmptyInputs) {
  auto s = setup();
  const std::vector<Cost> levels{500};
  EXPECT_THROW(run_comparison(s.planted.raw, s.planted.schema, s.profile, levels, 0, s.cfg), std::invalid_argument);
  EXPECT_THROW(run_comparison(s.planted.raw, s.planted.schema, s.profile, {}, 1, s.cfg), std::invalid_argument);
}

}  // namespace
}  // namespace bcm
