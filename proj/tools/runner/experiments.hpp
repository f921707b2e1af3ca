#pragma once

#include <string>

#include "runner/config.hpp"
#include "runner/report.hpp"

namespace oscillab::runner {

enum ExitCode { kExitPass = 0, kExitNumericalFailure = 1, kExitConfigError = 2 };

struct RunResult {
  Report report;
  int exit_code = kExitPass;
};

/// Runs the configured experiment. Config problems throw Error(ConfigError);
/// numerical errors become failing rows.
RunResult run_experiment(const ExperimentConfig& config);

/// Runs and writes the CSV and JSON files named by output_csv / output_json
/// (default <id>.csv and <id>.json).
RunResult run_and_write(const ExperimentConfig& config);

std::string fixture_listing();

}  // namespace oscillab::runner
