#pragma once

#include <iosfwd>

#include "cli/config.hpp"
#include "cli/output.hpp"

#include "bcm/synthetic.hpp"

namespace bcm::cli {

/// Each builder runs an experiment and stages its files without touching
/// the disk; `log` receives progress lines.
OutputBundle build_schedule_outputs(const RunConfig& cfg, std::ostream& table, std::ostream& log);
OutputBundle build_compare_outputs(const RunConfig& cfg, std::ostream& log);
OutputBundle build_ablate_outputs(const RunConfig& cfg, std::ostream& log);

/// Worst relative error over a few random networks of the configured
/// topology.
double run_gradcheck(const RunConfig& cfg, std::ostream& log);

int cmd_schedule(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ablate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gradcheck(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_synth(const std::filesystem::path& out_dir, const PlantedSpec& spec, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bcm::cli
