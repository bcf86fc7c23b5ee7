#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bcm/budget.hpp"

namespace bcm {

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t train_seed = 0;
  bool reached = false;  // false when the budget is below every single feature
  FeatureSet features;
  double accuracy = 0.0;
  Cost model_cost = 0;
};

struct ComparisonCell {
  RemovalStrategy strategy = RemovalStrategy::kWeakNeuron;
  Cost budget = 0;
  std::vector<TrialOutcome> trials;
  bool has_best = false;
  double best_accuracy = 0.0;
  FeatureSet best_features;
  Cost best_model_cost = 0;
};

struct ComparisonReport {
  std::vector<Cost> budget_levels;  // descending
  std::vector<RemovalStrategy> strategies;
  std::size_t n_trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<ComparisonCell> cells;  // strategy-major, then budget

  const ComparisonCell& cell(RemovalStrategy strategy, Cost budget) const;
};

/// Seeds used by trial `trial` of a comparison.
std::uint64_t trial_train_seed(std::uint64_t base_seed, std::size_t trial);
std::uint64_t trial_random_seed(std::uint64_t base_seed, std::size_t trial);

/// For each trial every strategy walks one removal trajectory from the full
/// feature set through the budget levels (descending). Trials differ by
/// training seed (and, for the random strategy, by removal draws); all
/// strategies of a trial share the training seed, so the top level with all
/// features is the same model for each. The best trial per cell is the one
/// with the highest cross-validated accuracy; ties keep the earliest trial.
/// Trials run on up to cfg.threads workers.
ComparisonReport run_comparison(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile,
                                std::span<const Cost> budget_levels, std::size_t n_trials,
                                const PipelineConfig& cfg,
                                std::span<const RemovalStrategy> strategies = kAllStrategies);

/// strategy,budget,trial,accuracy,model_cost,feature_ids
void write_comparison_trials_csv(std::ostream& out, const ComparisonReport& report);
/// strategy,budget,best_accuracy
void write_comparison_summary_csv(std::ostream& out, const ComparisonReport& report);

}  // namespace bcm
