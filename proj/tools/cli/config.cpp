#include "cli/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bcm::cli {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Optimizer parse_optimizer(const std::string& name) {
  if (name == "sgd") return Optimizer::kSgd;
  if (name == "momentum") return Optimizer::kMomentum;
  throw ConfigError("unknown optimizer '" + name + "' (expected sgd or momentum)");
}

}  // namespace

PipelineConfig RunConfig::pipeline() const {
  PipelineConfig p;
  p.hidden = hidden;
  p.folds = k;
  p.fold_seed = seed;
  p.train = train;
  p.train.seed = seed;
  p.prune = prune;
  p.threads = threads;
  return p;
}

std::vector<Cost> RunConfig::budget_grid() const {
  if (!budget_levels.empty()) return budget_levels;
  std::vector<Cost> grid;
  for (Cost b = b_max; b > 0; b -= d) grid.push_back(b);
  return grid;
}

void RunConfig::validate() const {
  if (hidden.size() < 2) throw ConfigError("hidden needs at least two layers (networks have at least 4 layers)");
  for (auto h : hidden)
    if (h == 0) throw ConfigError("hidden layer sizes must be positive");
  if (k < 2) throw ConfigError("k must be at least 2");
  if (b_max <= 0) throw ConfigError("b_max must be positive");
  if (d <= 0) throw ConfigError("d must be positive");
  if (!(p_min >= 0.0 && p_min <= 1.0)) throw ConfigError("p_min must lie in [0, 1]");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (threads == 0) throw ConfigError("threads must be at least 1");
  if (!(prune.c0 > 0.0 && prune.c0 < 1.0)) throw ConfigError("prune.c0 must lie in (0, 1)");
  if (costs.lo < 0 || costs.lo > costs.hi) throw ConfigError("costs need 0 <= lo <= hi");
  for (const auto& s : strategies) parse_strategy(s);
  try {
    train.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (doc.contains("dataset")) cfg.dataset = resolve(base_dir, doc["dataset"].get<std::string>());
    if (doc.contains("schema")) cfg.schema = resolve(base_dir, doc["schema"].get<std::string>());
    if (doc.contains("costs")) {
      const auto& c = doc["costs"];
      if (c.contains("file")) cfg.costs.file = resolve(base_dir, c["file"].get<std::string>());
      cfg.costs.lo = c.value("lo", cfg.costs.lo);
      cfg.costs.hi = c.value("hi", cfg.costs.hi);
      if (c.contains("zero_cost")) cfg.costs.zero_cost = c["zero_cost"].get<std::vector<std::string>>();
      if (c.contains("seed")) cfg.costs.seed = c["seed"].get<std::uint64_t>();
    }
    if (doc.contains("hidden")) cfg.hidden = doc["hidden"].get<std::vector<std::size_t>>();
    if (doc.contains("train")) {
      const auto& t = doc["train"];
      cfg.train.epochs = t.value("epochs", cfg.train.epochs);
      cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
      cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
      if (t.contains("optimizer")) cfg.train.optimizer = parse_optimizer(t["optimizer"].get<std::string>());
      cfg.train.momentum = t.value("momentum", cfg.train.momentum);
    }
    if (doc.contains("prune")) {
      cfg.prune.c0 = doc["prune"].value("c0", cfg.prune.c0);
      cfg.prune.max_rounds = doc["prune"].value("max_rounds", cfg.prune.max_rounds);
    }
    cfg.k = doc.value("k", cfg.k);
    cfg.b_max = doc.value("b_max", cfg.b_max);
    cfg.d = doc.value("d", cfg.d);
    cfg.p_min = doc.value("p_min", cfg.p_min);
    cfg.trials = doc.value("trials", cfg.trials);
    if (doc.contains("budget_levels")) cfg.budget_levels = doc["budget_levels"].get<std::vector<Cost>>();
    if (doc.contains("strategies")) cfg.strategies = doc["strategies"].get<std::vector<std::string>>();
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("out")) cfg.out = resolve(base_dir, doc["out"].get<std::string>());
    cfg.threads = doc.value("threads", cfg.threads);
    cfg.explain = doc.value("explain", cfg.explain);
    cfg.independent_levels = doc.value("independent_levels", cfg.independent_levels);
    cfg.gradcheck_inputs = doc.value("gradcheck_inputs", cfg.gradcheck_inputs);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.parent_path());
}

LoadedInputs load_inputs(const RunConfig& cfg) {
  if (cfg.schema.empty()) throw ConfigError("config names no schema file");
  if (cfg.dataset.empty()) throw ConfigError("config names no dataset");
  if (!std::filesystem::exists(cfg.schema)) throw ConfigError("schema file not found: " + cfg.schema.string());
  if (!std::filesystem::exists(cfg.dataset)) throw ConfigError("dataset not found: " + cfg.dataset.string());

  LoadedInputs in;
  in.schema = load_schema(cfg.schema);
  in.data = load_csv(cfg.dataset, in.schema, cfg.k);
  if (cfg.costs.file) {
    in.profile = load_cost_csv(*cfg.costs.file, in.schema);
  } else {
    FeatureSet zero;
    for (const auto& name : cfg.costs.zero_cost.value_or(in.schema.zero_cost)) zero.insert(in.schema.id_of(name));
    in.profile = sample_costs(in.schema, cfg.costs.lo, cfg.costs.hi, zero, cfg.costs.seed.value_or(cfg.seed));
  }
  return in;
}

}  // namespace bcm::cli
