#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcm/costs.hpp"
#include "bcm/dataset.hpp"
#include "bcm/encoding.hpp"
#include "bcm/folds.hpp"
#include "bcm/network.hpp"
#include "bcm/prune.hpp"
#include "bcm/removal.hpp"
#include "bcm/train.hpp"

namespace bcm {

/// Everything needed to build and score a model on a feature subset.
struct PipelineConfig {
  std::vector<std::size_t> hidden{120, 120, 120, 120, 120};
  std::size_t folds = 10;
  std::uint64_t fold_seed = 0;
  TrainConfig train;
  PruneConfig prune;
  std::size_t threads = 1;
};

/// A network trained and cross-validated on one feature subset.
struct ModelFit {
  FeatureSet features;
  Cost cost = 0;
  NetworkStructure structure;
  EncodedDataset encoding;
  CrossValidation cv;
};

/// Trains each distinct feature subset once and caches the result. The fold
/// partition is drawn once per trainer, so every subset is scored on the
/// same folds.
class ModelTrainer {
 public:
  ModelTrainer(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile, PipelineConfig cfg);

  const ModelFit& fit(const FeatureSet& features);

  std::size_t distinct_fits() const { return cache_.size(); }
  const FoldAssignment& folds() const { return folds_; }
  const PipelineConfig& config() const { return cfg_; }
  const CostProfile& profile() const { return profile_; }
  const FeatureSchema& schema() const { return schema_; }

 private:
  const RawDataset& data_;
  const FeatureSchema& schema_;
  const CostProfile& profile_;
  PipelineConfig cfg_;
  FoldAssignment folds_;
  std::map<FeatureSet, std::unique_ptr<ModelFit>> cache_;
};

/// One feature removal along a trajectory.
struct RemovalEvent {
  std::size_t step = 0;
  RemovalStrategy strategy = RemovalStrategy::kWeakNeuron;
  FeatureSet before;
  FeatureId removed = 0;
  std::optional<FeatureImportanceReport> report;  // weak_neuron only
  std::vector<std::string> marking_rounds;        // JSON per round, when explain is on
};
using RemovalObserver = std::function<void(const RemovalEvent&)>;

/// A sequence of single-feature removals from a starting set, driven by one
/// strategy. Budget levels visited in decreasing order share the trajectory.
class Trajectory {
 public:
  Trajectory(ModelTrainer& trainer, RemovalStrategy strategy, FeatureSet start, std::uint64_t random_seed = 0);

  const FeatureSet& current() const { return current_; }
  Cost current_cost() const;
  std::size_t removals() const { return step_; }
  const ModelFit& current_fit() { return trainer_.fit(current_); }

  /// Removes the strategy's choice; requires at least two features.
  FeatureId remove_one();

  /// Removes features until the cost fits `budget`. Returns false when a
  /// single feature remains and still exceeds it.
  bool reduce_to(Cost budget);

  void set_observer(RemovalObserver observer, bool explain = false) {
    observer_ = std::move(observer);
    explain_ = explain;
  }

 private:
  ModelTrainer& trainer_;
  RemovalStrategy strategy_;
  FeatureSet current_;
  std::uint64_t random_seed_;
  std::size_t step_ = 0;
  RemovalObserver observer_;
  bool explain_ = false;
};

/// Budget-constrained model: structure, features, weights, expected accuracy.
struct BCM {
  NetworkStructure structure;
  FeatureSet features;
  Network weights;
  double accuracy = 0.0;
  Cost model_cost = 0;
  Cost budget = 0;
  std::vector<EvalResult> per_fold;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BCM make_bcm(const ModelFit& fit, Cost budget);

/// Starts from every schema feature and removes the least important one
/// (weak-neuron analysis of the full-data network) until the cost fits.
/// Throws BudgetError when even a single feature exceeds `budget`.
BCM generate_bcm(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile, Cost budget,
                 const PipelineConfig& cfg);

struct ScheduleRequest {
  Cost b_max = 0;
  Cost d = 0;
  double p_min = 0.0;
  /// Restart the removal from the full set for every level, with per-level
  /// seeds, instead of continuing one trajectory.
  bool independent_levels = false;
};

struct Schedule {
  std::vector<BCM> entries;
  Cost b_max = 0;
  Cost d = 0;
  double p_min = 0.0;
  CostProfile profile;
  std::string stop_reason;
};

/// Budget levels b_max, b_max - d, ... while positive. Stops at the first
/// level whose model misses p_min or whose budget cannot be met.
Schedule generate_schedule(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile,
                           const ScheduleRequest& request, const PipelineConfig& cfg,
                           const RemovalObserver& observer = {}, bool explain = false);

struct AblationPoint {
  std::size_t n_removed = 0;
  FeatureSet remaining;
  Cost model_cost = 0;
  double accuracy = 0.0;
};

/// Removes one feature at a time with `strategy` until one remains; one
/// point per feature set, starting with the full set.
std::vector<AblationPoint> ablation_curve(const RawDataset& data, const FeatureSchema& schema,
                                          const CostProfile& profile, const PipelineConfig& cfg,
                                          RemovalStrategy strategy, std::uint64_t seed,
                                          const RemovalObserver& observer = {}, bool explain = false);

std::string format_ids(const FeatureSet& features);
std::string format_names(const FeatureSet& features, const FeatureSchema& schema);

/// model_index,budget,accuracy,model_cost,feature_ids,feature_names
void write_schedule_csv(std::ostream& out, const Schedule& schedule, const FeatureSchema& schema);
/// Schedule metadata plus every BCM with its serialized network.
std::string schedule_to_json(const Schedule& schedule, const FeatureSchema& schema);
/// strategy,n_removed,remaining_feature_ids,model_cost,accuracy
void write_ablation_csv(std::ostream& out, RemovalStrategy strategy, const std::vector<AblationPoint>& curve,
                        bool header = true);
/// Human-readable table in the layout of a BCM list.
void print_schedule_table(std::ostream& out, const Schedule& schedule);

}  // namespace bcm
