#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "colsafe/types.hpp"

namespace colsafe {

enum class NoiseFamily { Gaussian, Rademacher };

/// Generator of the bounded weights v_t.
enum class WeightProcess { Uniform, Zero, Replay };

struct ConcentrationConfig {
    Index length = 1000;  // n
    double sigma = 1.0;
    double delta = 0.05;
    Index trials = 10000;
    NoiseFamily noise = NoiseFamily::Gaussian;
    WeightProcess weights = WeightProcess::Uniform;
    std::vector<double> replay;  // used cyclically when weights == Replay, values in [0, 1]
    std::uint64_t seed = 0;
    double bound_multiplier = 1.0;  // test hook: scales the bound to force failures

    void validate() const;
};

/// sqrt(2σ² log(√(1+V)/δ) (1+V)), the high-probability bound on |Σ v_t ω_t|.
double self_normalized_bound(double sigma, double v_sum, double delta);

struct BoundCheck {
    Index trials = 0;
    Index violations = 0;
    double rate = 0.0;
};

/// Fraction of trials in which |S_n| exceeds the self-normalized bound.
BoundCheck check_self_normalized_bound(const ConcentrationConfig& config);

struct MartingaleCheck {
    Index trials = 0;
    Index overflowed = 0;  // trials whose exponent left the double range; excluded from the mean
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Monte-Carlo mean of exp(Σ η ω_t v_t / σ − η² v_t² / 2), which is at most 1 in expectation.
MartingaleCheck check_supermartingale(const ConcentrationConfig& config, double eta);

std::string_view to_string(NoiseFamily family);
NoiseFamily parse_noise_family(std::string_view name);

}  // namespace colsafe
