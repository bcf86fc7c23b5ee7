#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bcm/budget.hpp"
#include "bcm/costs.hpp"
#include "bcm/schema.hpp"

namespace bcm::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either a cost table on disk or a sampling recipe.
struct CostSpec {
  std::optional<std::filesystem::path> file;
  Cost lo = 100;
  Cost hi = 300;
  std::optional<std::vector<std::string>> zero_cost;  // unset: schema default
  std::optional<std::uint64_t> seed;                  // unset: run seed
};

struct RunConfig {
  std::filesystem::path dataset;
  std::filesystem::path schema;
  CostSpec costs;
  std::vector<std::size_t> hidden{120, 120, 120, 120, 120};
  TrainConfig train;
  PruneConfig prune;
  std::size_t k = 10;
  Cost b_max = 1900;
  Cost d = 200;
  double p_min = 0.65;
  std::size_t trials = 10;
  std::vector<Cost> budget_levels;  // compare: empty means the b_max, b_max - d, ... grid
  std::vector<std::string> strategies{"weak_neuron", "cost_based", "random"};
  std::uint64_t seed = 1;
  std::filesystem::path out = "out";
  std::size_t threads = 1;
  bool explain = false;
  bool independent_levels = false;
  std::size_t gradcheck_inputs = 8;  // used when no dataset is configured

  PipelineConfig pipeline() const;
  std::vector<Cost> budget_grid() const;
  void validate() const;
};

/// Reads a JSON run config. Relative paths inside it resolve against the
/// config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// Resolved inputs of a run.
struct LoadedInputs {
  FeatureSchema schema;
  RawDataset data;
  CostProfile profile;
};

LoadedInputs load_inputs(const RunConfig& cfg);

}  // namespace bcm::cli
