#include "bcm/budget.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "json_io.hpp"

namespace bcm {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

ModelTrainer::ModelTrainer(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile,
                           PipelineConfig cfg)
    : data_(data), schema_(schema), profile_(profile), cfg_(std::move(cfg)),
      folds_(kfold(data.rows(), cfg_.folds, cfg_.fold_seed)) {
  for (const auto& f : schema.features) profile.cost(f.id);
}

const ModelFit& ModelTrainer::fit(const FeatureSet& features) {
  if (features.empty()) throw BudgetError("cannot build a model without input features");
  if (auto it = cache_.find(features); it != cache_.end()) return *it->second;
  auto fit = std::make_unique<ModelFit>();
  fit->features = features;
  fit->cost = model_cost(features, profile_);
  fit->encoding = encode(data_, schema_, features);
  fit->structure = NetworkStructure::with_hidden(fit->encoding.columns(), cfg_.hidden);
  fit->cv = cross_validate(fit->structure, fit->encoding, folds_, cfg_.train, cfg_.threads);
  return *cache_.emplace(features, std::move(fit)).first->second;
}

Trajectory::Trajectory(ModelTrainer& trainer, RemovalStrategy strategy, FeatureSet start, std::uint64_t random_seed)
    : trainer_(trainer), strategy_(strategy), current_(std::move(start)), random_seed_(random_seed) {
  if (current_.empty()) throw BudgetError("trajectory needs a nonempty starting feature set");
}

Cost Trajectory::current_cost() const { return model_cost(current_, trainer_.profile()); }

FeatureId Trajectory::remove_one() {
  if (current_.size() < 2) throw BudgetError("cannot remove the last remaining feature");
  RemovalEvent event;
  event.step = step_;
  event.strategy = strategy_;
  event.before = current_;
  switch (strategy_) {
    case RemovalStrategy::kWeakNeuron: {
      const ModelFit& fit = trainer_.fit(current_);
      MarkingObserver trace;
      if (explain_)
        trace = [&](const MarkingRound& round) { event.marking_rounds.push_back(marking_round_json(round, fit.encoding)); };
      event.report = find_least_important_feature(fit.cv.final_net, fit.encoding, trainer_.profile(),
                                                  trainer_.config().prune, trace);
      event.removed = event.report->selected_feature;
      break;
    }
    case RemovalStrategy::kCostBased:
      event.removed = remove_cost_based(current_, trainer_.profile());
      break;
    case RemovalStrategy::kRandom:
      event.removed = remove_random(current_, random_seed_, step_);
      break;
  }
  current_.erase(event.removed);
  ++step_;
  if (observer_) observer_(event);
  return event.removed;
}

bool Trajectory::reduce_to(Cost budget) {
  while (current_cost() > budget) {
    if (current_.size() < 2) return false;
    remove_one();
  }
  return true;
}

BCM make_bcm(const ModelFit& fit, Cost budget) {
  if (fit.cost > budget) throw BudgetError("model cost " + std::to_string(fit.cost) + " exceeds budget " +
                                           std::to_string(budget));
  BCM bcm;
  bcm.structure = fit.structure;
  bcm.features = fit.features;
  bcm.weights = fit.cv.final_net;
  bcm.accuracy = fit.cv.mean_accuracy;
  bcm.model_cost = fit.cost;
  bcm.budget = budget;
  bcm.per_fold = fit.cv.per_fold;
  return bcm;
}

BCM generate_bcm(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile, Cost budget,
                 const PipelineConfig& cfg) {
  if (budget < 0) throw BudgetError("budget must be nonnegative");
  ModelTrainer trainer(data, schema, profile, cfg);
  Trajectory trajectory(trainer, RemovalStrategy::kWeakNeuron, schema.all_ids());
  if (!trajectory.reduce_to(budget))
    throw BudgetError("budget " + std::to_string(budget) + " is below the cost of every single feature left");
  return make_bcm(trajectory.current_fit(), budget);
}

Schedule generate_schedule(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile,
                           const ScheduleRequest& request, const PipelineConfig& cfg,
                           const RemovalObserver& observer, bool explain) {
  if (request.b_max <= 0) throw std::invalid_argument("b_max must be positive");
  if (request.d <= 0) throw std::invalid_argument("d must be positive");
  if (!(request.p_min >= 0.0 && request.p_min <= 1.0)) throw std::invalid_argument("p_min must lie in [0, 1]");

  Schedule schedule;
  schedule.b_max = request.b_max;
  schedule.d = request.d;
  schedule.p_min = request.p_min;
  schedule.profile = profile;
  schedule.stop_reason = "budget grid exhausted";

  std::unique_ptr<ModelTrainer> shared_trainer;
  std::unique_ptr<Trajectory> shared;
  if (!request.independent_levels) {
    shared_trainer = std::make_unique<ModelTrainer>(data, schema, profile, cfg);
    shared = std::make_unique<Trajectory>(*shared_trainer, RemovalStrategy::kWeakNeuron, schema.all_ids());
    shared->set_observer(observer, explain);
  }

  std::size_t level = 0;
  for (Cost b = request.b_max; b > 0; b -= request.d, ++level) {
    std::unique_ptr<ModelTrainer> level_trainer;
    std::unique_ptr<Trajectory> level_trajectory;
    Trajectory* trajectory = shared.get();
    if (request.independent_levels) {
      PipelineConfig level_cfg = cfg;
      level_cfg.train.seed = cfg.train.seed + 1000 * level;
      level_cfg.fold_seed = cfg.fold_seed + level;
      level_trainer = std::make_unique<ModelTrainer>(data, schema, profile, level_cfg);
      level_trajectory = std::make_unique<Trajectory>(*level_trainer, RemovalStrategy::kWeakNeuron, schema.all_ids());
      level_trajectory->set_observer(observer, explain);
      trajectory = level_trajectory.get();
    }
    if (!trajectory->reduce_to(b)) {
      schedule.stop_reason = "budget " + std::to_string(b) + " cannot be met by any single feature";
      break;
    }
    const ModelFit& fit = trajectory->current_fit();
    if (fit.cv.mean_accuracy < request.p_min) {
      schedule.stop_reason = "accuracy " + fixed6(fit.cv.mean_accuracy) + " below p_min at budget " + std::to_string(b);
      break;
    }
    schedule.entries.push_back(make_bcm(fit, b));
  }
  return schedule;
}

std::vector<AblationPoint> ablation_curve(const RawDataset& data, const FeatureSchema& schema,
                                          const CostProfile& profile, const PipelineConfig& cfg,
                                          RemovalStrategy strategy, std::uint64_t seed,
                                          const RemovalObserver& observer, bool explain) {
  ModelTrainer trainer(data, schema, profile, cfg);
  Trajectory trajectory(trainer, strategy, schema.all_ids(), seed);
  trajectory.set_observer(observer, explain);
  std::vector<AblationPoint> curve;
  while (true) {
    const ModelFit& fit = trajectory.current_fit();
    curve.push_back({trajectory.removals(), fit.features, fit.cost, fit.cv.mean_accuracy});
    if (trajectory.current().size() < 2) break;
    trajectory.remove_one();
  }
  return curve;
}

std::string format_ids(const FeatureSet& features) {
  std::string out;
  for (auto id : features) {
    if (!out.empty()) out += ';';
    out += std::to_string(id);
  }
  return out;
}

std::string format_names(const FeatureSet& features, const FeatureSchema& schema) {
  std::string out;
  for (auto id : features) {
    if (!out.empty()) out += ';';
    out += schema.feature(id).name;
  }
  return out;
}

void write_schedule_csv(std::ostream& out, const Schedule& schedule, const FeatureSchema& schema) {
  out << "model_index,budget,accuracy,model_cost,feature_ids,feature_names\n";
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const auto& e = schedule.entries[i];
    out << i + 1 << ',' << e.budget << ',' << fixed6(e.accuracy) << ',' << e.model_cost << ','
        << format_ids(e.features) << ',' << format_names(e.features, schema) << '\n';
  }
}

std::string schedule_to_json(const Schedule& schedule, const FeatureSchema& schema) {
  using nlohmann::json;
  json costs = json::object();
  for (const auto& f : schema.features) costs[f.name] = schedule.profile.cost(f.id);
  json entries = json::array();
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const auto& e = schedule.entries[i];
    std::vector<double> folds;
    for (const auto& r : e.per_fold) folds.push_back(r.accuracy);
    entries.push_back({{"model_index", i + 1},
                       {"budget", e.budget},
                       {"accuracy", e.accuracy},
                       {"model_cost", e.model_cost},
                       {"feature_ids", std::vector<FeatureId>(e.features.begin(), e.features.end())},
                       {"feature_names", format_names(e.features, schema)},
                       {"fold_accuracy", folds},
                       {"network", network_json(e.weights)}});
  }
  json doc = {{"b_max", schedule.b_max},
              {"d", schedule.d},
              {"p_min", schedule.p_min},
              {"stop_reason", schedule.stop_reason},
              {"cost_seed", schedule.profile.seed},
              {"costs", std::move(costs)},
              {"entries", std::move(entries)}};
  return doc.dump(1) + "\n";
}

void write_ablation_csv(std::ostream& out, RemovalStrategy strategy, const std::vector<AblationPoint>& curve,
                        bool header) {
  if (header) out << "strategy,n_removed,remaining_feature_ids,model_cost,accuracy\n";
  for (const auto& p : curve)
    out << to_string(strategy) << ',' << p.n_removed << ',' << format_ids(p.remaining) << ',' << p.model_cost << ','
        << fixed6(p.accuracy) << '\n';
}

void print_schedule_table(std::ostream& out, const Schedule& schedule) {
  char line[64];
  out << "Model  Budget  Accuracy  Cost  Features\n";
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const auto& e = schedule.entries[i];
    std::snprintf(line, sizeof(line), "%-6s %6lld  %.4f  %5lld  ", ("P" + std::to_string(i + 1)).c_str(),
                  static_cast<long long>(e.budget), e.accuracy, static_cast<long long>(e.model_cost));
    out << line << '{' << format_ids(e.features) << "}\n";
  }
  out << "(" << schedule.stop_reason << ")\n";
}

}  // namespace bcm
