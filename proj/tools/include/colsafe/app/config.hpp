#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "colsafe/concentration.hpp"
#include "colsafe/gp.hpp"
#include "colsafe/kernel.hpp"

namespace colsafe::app {

/// Invalid configuration. `line` is 1-based, 0 when no position is known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message);
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

struct ProblemSettings {
    std::string name = "synthetic-2d";
    std::optional<double> sigma;
    std::optional<Index> resolution;

    bool operator==(const ProblemSettings&) const = default;
};

struct ConcentrationSettings {
    std::vector<double> deltas{0.01, 0.05, 0.1};
    std::vector<Index> lengths{100, 1000};
    Index trials = 10000;
    double sigma = 1.0;
    std::vector<NoiseFamily> noise{NoiseFamily::Gaussian, NoiseFamily::Rademacher};
    double bound_multiplier = 1.0;
    std::vector<double> etas{-1.0, -0.5, 0.5, 1.0};
    Index martingale_length = 10;
    Index martingale_trials = 100000;

    bool operator==(const ConcentrationSettings&) const = default;
};

/**
 * Everything one experiment needs. Text form is YAML with the sections
 * problem, kernel, confidence, gp, run and concentration plus the top-level
 * keys method and compare; unknown keys are rejected.
 */
struct ExperimentConfig {
    ProblemSettings problem;
    std::string method = "colsafe";
    std::vector<std::string> compare{"colsafe", "gp-safeopt"};
    KernelSpec kernel;
    double delta = 0.05;
    std::optional<double> sigma;      // defaults to the problem noise
    std::optional<double> lipschitz;  // defaults to the problem's declared constant
    GpConfig gp;
    Index budget = 100;
    std::uint64_t seed = 0;
    std::string output = "out";
    Index repeats = 1;
    bool wall_times = true;
    ConcentrationSettings concentration;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace colsafe::app
