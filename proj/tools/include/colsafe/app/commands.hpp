#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "colsafe/app/config.hpp"
#include "colsafe/loop.hpp"

namespace colsafe::app {

enum ExitCode : int { kSuccess = 0, kAcceptanceFailure = 1, kConfigError = 2 };

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<Index> repeats;
};

/// Problem, estimator settings and loop options resolved from a config.
struct Experiment {
    Problem problem;
    EstimatorConfig estimator;
    GpConfig gp;
    RunOptions options;
};

Experiment build_experiment(const ExperimentConfig& config);

/// Runs "colsafe" or "gp-safeopt" on the experiment.
RunResult run_method(const std::string& method, const Experiment& experiment, const RunOptions& options);

int cmd_run(const std::string& config_path, const CliOverrides& overrides);
int cmd_compare(const std::string& config_path, const CliOverrides& overrides);
int cmd_verify_bounds(const std::string& config_path, const CliOverrides& overrides);

}  // namespace colsafe::app
