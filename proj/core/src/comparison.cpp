#include "bcm/comparison.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>

#include "bcm/parallel.hpp"
#include "bcm/random.hpp"

namespace bcm {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

const ComparisonCell& ComparisonReport::cell(RemovalStrategy strategy, Cost budget) const {
  for (const auto& c : cells)
    if (c.strategy == strategy && c.budget == budget) return c;
  throw std::out_of_range("no comparison cell for " + std::string(to_string(strategy)) + " at budget " +
                          std::to_string(budget));
}

std::uint64_t trial_train_seed(std::uint64_t base_seed, std::size_t trial) {
  return derive_seed(base_seed, 0x747200000000ULL + trial);
}

std::uint64_t trial_random_seed(std::uint64_t base_seed, std::size_t trial) {
  return derive_seed(base_seed, 0x726E00000000ULL + trial);
}

ComparisonReport run_comparison(const RawDataset& data, const FeatureSchema& schema, const CostProfile& profile,
                                std::span<const Cost> budget_levels, std::size_t n_trials,
                                const PipelineConfig& cfg, std::span<const RemovalStrategy> strategies) {
  if (n_trials == 0) throw std::invalid_argument("run_comparison: n_trials must be at least 1");
  if (budget_levels.empty()) throw std::invalid_argument("run_comparison: no budget levels");

  ComparisonReport report;
  report.budget_levels.assign(budget_levels.begin(), budget_levels.end());
  std::sort(report.budget_levels.begin(), report.budget_levels.end(), std::greater<>());
  report.budget_levels.erase(std::unique(report.budget_levels.begin(), report.budget_levels.end()),
                             report.budget_levels.end());
  report.strategies.assign(strategies.begin(), strategies.end());
  report.n_trials = n_trials;
  report.base_seed = cfg.train.seed;

  const std::size_t n_levels = report.budget_levels.size();
  const std::size_t n_strategies = report.strategies.size();
  // outcomes[trial][strategy][level]
  std::vector<std::vector<std::vector<TrialOutcome>>> outcomes(
      n_trials, std::vector<std::vector<TrialOutcome>>(n_strategies, std::vector<TrialOutcome>(n_levels)));

  const std::size_t trial_threads = std::max<std::size_t>(cfg.threads, 1);
  parallel_for(n_trials, trial_threads, [&](std::size_t trial) {
    PipelineConfig trial_cfg = cfg;
    trial_cfg.train.seed = trial_train_seed(cfg.train.seed, trial);
    trial_cfg.threads = 1;
    ModelTrainer trainer(data, schema, profile, trial_cfg);
    for (std::size_t s = 0; s < n_strategies; ++s) {
      Trajectory trajectory(trainer, report.strategies[s], schema.all_ids(), trial_random_seed(cfg.train.seed, trial));
      for (std::size_t l = 0; l < n_levels; ++l) {
        auto& out = outcomes[trial][s][l];
        out.trial = trial;
        out.train_seed = trial_cfg.train.seed;
        if (!trajectory.reduce_to(report.budget_levels[l])) break;
        const ModelFit& fit = trajectory.current_fit();
        out.reached = true;
        out.features = fit.features;
        out.accuracy = fit.cv.mean_accuracy;
        out.model_cost = fit.cost;
      }
    }
  });

  for (std::size_t s = 0; s < n_strategies; ++s) {
    for (std::size_t l = 0; l < n_levels; ++l) {
      ComparisonCell cell;
      cell.strategy = report.strategies[s];
      cell.budget = report.budget_levels[l];
      for (std::size_t t = 0; t < n_trials; ++t) {
        const auto& o = outcomes[t][s][l];
        cell.trials.push_back(o);
        if (o.reached && (!cell.has_best || o.accuracy > cell.best_accuracy)) {
          cell.has_best = true;
          cell.best_accuracy = o.accuracy;
          cell.best_features = o.features;
          cell.best_model_cost = o.model_cost;
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void write_comparison_trials_csv(std::ostream& out, const ComparisonReport& report) {
  out << "strategy,budget,trial,accuracy,model_cost,feature_ids\n";
  for (const auto& cell : report.cells) {
    for (const auto& t : cell.trials) {
      out << to_string(cell.strategy) << ',' << cell.budget << ',' << t.trial << ',';
      if (t.reached) {
        out << fixed6(t.accuracy) << ',' << t.model_cost << ',' << format_ids(t.features) << '\n';
      } else {
        out << "NA,NA,\n";
      }
    }
  }
}

void write_comparison_summary_csv(std::ostream& out, const ComparisonReport& report) {
  out << "strategy,budget,best_accuracy\n";
  for (const auto& cell : report.cells)
    out << to_string(cell.strategy) << ',' << cell.budget << ',' << (cell.has_best ? fixed6(cell.best_accuracy) : "NA")
        << '\n';
}

}  // namespace bcm
