#include "cli/commands.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bcm/comparison.hpp"
#include "bcm/gradcheck.hpp"
#include "bcm/random.hpp"

namespace bcm::cli {

namespace {

constexpr double kGradcheckTolerance = 1e-4;

std::string cost_table(const LoadedInputs& in) {
  std::ostringstream s;
  write_cost_csv(s, in.schema, in.profile);
  return s.str();
}

std::string two_digit(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02zu", n);
  return buf;
}

/// Collects --explain dumps as staged files.
RemovalObserver explain_observer(OutputBundle& bundle, const FeatureSchema& schema, std::ostream& log,
                                 bool explain) {
  return [&bundle, &schema, &log, explain](const RemovalEvent& e) {
    log << "  removed " << schema.feature(e.removed).name << " [" << e.removed << "] via " << to_string(e.strategy)
        << " (step " << e.step << ")\n";
    if (!explain) return;
    nlohmann::json doc;
    doc["strategy"] = to_string(e.strategy);
    doc["step"] = e.step;
    doc["features_before"] = std::vector<FeatureId>(e.before.begin(), e.before.end());
    doc["removed"] = e.removed;
    doc["removed_name"] = schema.feature(e.removed).name;
    if (e.report) {
      doc["rounds_used"] = e.report->rounds_used;
      doc["weak_features"] = std::vector<FeatureId>(e.report->weak_features.begin(), e.report->weak_features.end());
      doc["weak_input_neurons"] = e.report->weak_input_neurons;
    }
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : e.marking_rounds) rounds.push_back(nlohmann::json::parse(r));
    doc["rounds"] = std::move(rounds);
    bundle.add(std::filesystem::path("explain") /
                   (std::string(to_string(e.strategy)) + "_step_" + two_digit(e.step) + ".json"),
               doc.dump(1) + "\n");
  };
}

template <class Builder>
int guarded(std::ostream& err, Builder&& build) {
  try {
    return build();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

void report_written(std::ostream& out, const std::vector<std::filesystem::path>& written) {
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
}

}  // namespace

OutputBundle build_schedule_outputs(const RunConfig& cfg, std::ostream& table, std::ostream& log) {
  cfg.validate();
  const LoadedInputs in = load_inputs(cfg);
  log << "schedule: " << in.data.rows() << " rows (" << in.data.dropped_rows << " dropped), total feature cost "
      << in.profile.total() << '\n';
  OutputBundle bundle;
  const ScheduleRequest request{cfg.b_max, cfg.d, cfg.p_min, cfg.independent_levels};
  const Schedule schedule = generate_schedule(in.data, in.schema, in.profile, request, cfg.pipeline(),
                                              explain_observer(bundle, in.schema, log, cfg.explain), cfg.explain);
  std::ostringstream csv;
  write_schedule_csv(csv, schedule, in.schema);
  bundle.add("schedule.csv", csv.str());
  bundle.add("schedule.json", schedule_to_json(schedule, in.schema));
  bundle.add("costs.csv", cost_table(in));
  print_schedule_table(table, schedule);
  return bundle;
}

OutputBundle build_compare_outputs(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const LoadedInputs in = load_inputs(cfg);
  std::vector<RemovalStrategy> strategies;
  for (const auto& s : cfg.strategies) strategies.push_back(parse_strategy(s));
  const auto levels = cfg.budget_grid();
  log << "compare: " << strategies.size() << " strategies x " << levels.size() << " budget levels x " << cfg.trials
      << " trials\n";
  const ComparisonReport report =
      run_comparison(in.data, in.schema, in.profile, levels, cfg.trials, cfg.pipeline(), strategies);
  OutputBundle bundle;
  std::ostringstream trials;
  write_comparison_trials_csv(trials, report);
  std::ostringstream summary;
  write_comparison_summary_csv(summary, report);
  bundle.add("comparison_trials.csv", trials.str());
  bundle.add("comparison_summary.csv", summary.str());
  bundle.add("costs.csv", cost_table(in));
  return bundle;
}

OutputBundle build_ablate_outputs(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const LoadedInputs in = load_inputs(cfg);
  OutputBundle bundle;
  for (const auto& name : cfg.strategies) {
    const RemovalStrategy strategy = parse_strategy(name);
    log << "ablate: " << name << '\n';
    const auto curve = ablation_curve(in.data, in.schema, in.profile, cfg.pipeline(), strategy, cfg.seed,
                                      explain_observer(bundle, in.schema, log, cfg.explain), cfg.explain);
    std::ostringstream csv;
    write_ablation_csv(csv, strategy, curve);
    bundle.add("ablation_" + name + ".csv", csv.str());
  }
  bundle.add("costs.csv", cost_table(in));
  return bundle;
}

double run_gradcheck(const RunConfig& cfg, std::ostream& log) {
  std::size_t inputs = cfg.gradcheck_inputs;
  if (!cfg.schema.empty() && !cfg.dataset.empty()) {
    const LoadedInputs in = load_inputs(cfg);
    inputs = encode(in.data, in.schema, in.schema.all_ids()).columns();
  }
  const auto structure = NetworkStructure::with_hidden(inputs, cfg.hidden);
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const Network net = init_network(structure, derive_seed(cfg.seed, trial));
    Rng rng(derive_seed(cfg.seed, 100 + trial));
    Eigen::VectorXd row(static_cast<Eigen::Index>(inputs));
    for (Eigen::Index i = 0; i < row.size(); ++i) row(i) = rng.uniform01();
    GradientCheckOptions options;
    options.seed = derive_seed(cfg.seed, 200 + trial);
    const auto result = gradient_check(net, row, static_cast<double>(trial % 2), 1e-5, options);
    log << "gradcheck net " << trial << ": max relative error " << result.max_relative_error << " over "
        << result.checked << " weights (" << result.skipped_kinks << " kink probes skipped)\n";
    worst = std::max(worst, result.max_relative_error);
  }
  return worst;
}

int cmd_schedule(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ostringstream table;
    const auto bundle = build_schedule_outputs(cfg, table, err);
    report_written(err, bundle.commit(cfg.out));
    out << table.str();
    return 0;
  });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto bundle = build_compare_outputs(cfg, err);
    report_written(err, bundle.commit(cfg.out));
    for (const auto& [path, content] : bundle.files())
      if (path == "comparison_summary.csv") out << content;
    return 0;
  });
}

int cmd_ablate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto bundle = build_ablate_outputs(cfg, err);
    report_written(err, bundle.commit(cfg.out));
    for (const auto& [path, content] : bundle.files())
      if (path.string().rfind("ablation_", 0) == 0) out << content;
    return 0;
  });
}

int cmd_gradcheck(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double worst = run_gradcheck(cfg, err);
    out << "max relative error " << worst << (worst < kGradcheckTolerance ? " (ok)" : " (FAILED)") << '\n';
    return worst < kGradcheckTolerance ? 0 : 1;
  });
}

int cmd_synth(const std::filesystem::path& out_dir, const PlantedSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PlantedDataset planted = make_planted_dataset(spec);
    std::ostringstream csv;
    write_csv(csv, planted.schema, planted.raw);
    OutputBundle bundle;
    bundle.add("dataset.csv", csv.str());
    bundle.add("schema.json", schema_to_json(planted.schema));
    report_written(err, bundle.commit(out_dir));
    out << "noise features:";
    for (auto id : planted.noise_ids) out << ' ' << planted.schema.feature(id).name << " [" << id << ']';
    out << '\n';
    return 0;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budget-constrained feed-forward models: schedules, baselines and ablations"};
  app.require_subcommand(1);

  struct Overrides {
    std::string config;
    std::uint64_t seed = 0;
    Cost b_max = 0;
    Cost d = 0;
    double p_min = 0.0;
    std::size_t k = 0;
    std::size_t trials = 0;
    std::string out;
    std::size_t threads = 0;
    std::vector<std::string> strategies;
  } ov;
  std::vector<CLI::Option*> seed_opt, bmax_opt, d_opt, pmin_opt, k_opt, trials_opt, out_opt, threads_opt, explain_opt,
      indep_opt, strategy_opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ov.config, "Run config (JSON)")->required()->check(CLI::ExistingFile);
    seed_opt.push_back(sub->add_option("--seed", ov.seed, "Base seed"));
    bmax_opt.push_back(sub->add_option("--b-max", ov.b_max, "Maximum budget level"));
    d_opt.push_back(sub->add_option("--d", ov.d, "Distance between budget levels"));
    pmin_opt.push_back(sub->add_option("--p-min", ov.p_min, "Minimum accuracy"));
    k_opt.push_back(sub->add_option("--k", ov.k, "Cross-validation folds"));
    trials_opt.push_back(sub->add_option("--trials", ov.trials, "Trials per budget level"));
    out_opt.push_back(sub->add_option("--out", ov.out, "Output directory"));
    threads_opt.push_back(sub->add_option("--threads", ov.threads, "Worker threads"));
    explain_opt.push_back(sub->add_flag("--explain", "Dump per-removal marking diagnostics"));
    indep_opt.push_back(sub->add_flag("--independent-levels", "Restart removal for every budget level"));
  };
  auto* schedule = app.add_subcommand("schedule", "Generate a budget-sorted list of BCMs");
  auto* compare = app.add_subcommand("compare", "Compare weak-neuron, cost-based and random removal");
  auto* ablate = app.add_subcommand("ablate", "Remove one feature at a time and record accuracy");
  auto* gradcheck = app.add_subcommand("gradcheck", "Check backpropagation against finite differences");
  for (auto* sub : {schedule, compare, ablate, gradcheck}) add_common(sub);
  strategy_opt.push_back(ablate->add_option("--strategy", ov.strategies, "weak_neuron, cost_based, random")
                             ->check(CLI::IsMember({"weak_neuron", "cost_based", "random"})));

  PlantedSpec planted;
  std::string synth_out = "synthetic";
  bool quadratic = false;
  auto* synth = app.add_subcommand("synth", "Write a planted synthetic dataset and its schema");
  synth->add_option("--out", synth_out, "Output directory");
  synth->add_option("--rows", planted.rows, "Row count");
  synth->add_option("--informative", planted.informative, "Informative features");
  synth->add_option("--noise", planted.noise, "Pure-noise features");
  synth->add_option("--categorical", planted.categorical, "Informative features stored as categories");
  synth->add_option("--label-noise", planted.label_noise, "Fraction of flipped labels");
  synth->add_option("--seed", planted.seed, "Generator seed");
  synth->add_flag("--quadratic", quadratic, "Add an interaction term to the rule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (synth->parsed()) {
    if (quadratic) planted.rule = PlantedRule::kQuadratic;
    return cmd_synth(synth_out, planted, out, err);
  }

  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (auto* o : opts)
      if (o->count() > 0) return true;
    return false;
  };
  RunConfig cfg;
  try {
    cfg = load_run_config(ov.config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (given(seed_opt)) cfg.seed = ov.seed;
  if (given(bmax_opt)) cfg.b_max = ov.b_max;
  if (given(d_opt)) cfg.d = ov.d;
  if (given(pmin_opt)) cfg.p_min = ov.p_min;
  if (given(k_opt)) cfg.k = ov.k;
  if (given(trials_opt)) cfg.trials = ov.trials;
  if (given(out_opt)) cfg.out = ov.out;
  if (given(threads_opt)) cfg.threads = ov.threads;
  if (given(explain_opt)) cfg.explain = true;
  if (given(indep_opt)) cfg.independent_levels = true;
  if (given(strategy_opt)) cfg.strategies = ov.strategies;

  if (schedule->parsed()) return cmd_schedule(cfg, out, err);
  if (compare->parsed()) return cmd_compare(cfg, out, err);
  if (ablate->parsed()) return cmd_ablate(cfg, out, err);
  return cmd_gradcheck(cfg, out, err);
}

}  // namespace bcm::cli
