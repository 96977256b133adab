#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ztnd/cli/config.hpp"

namespace ztnd::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2, kIoError = 3 };

/// One model on the configured scenario.
Trace run_model(const ScenarioConfig& cfg, ModelKind kind);

/// trace.csv, summary.csv, residual.svg. kRuntimeError unless Completed.
int cmd_run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Same init and noise realization for every model; compare.csv,
/// compare.svg and a summary table on `out`.
int cmd_compare(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// trajectory.csv, trajectory.svg, error.svg for the tracking scenario.
int cmd_aoa(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point (subcommands run | compare | aoa).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ztnd::cli
