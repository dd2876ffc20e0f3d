#include "colsafe/concentration.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "colsafe/parallel.hpp"
#include "colsafe/rng.hpp"

namespace colsafe {
namespace {

constexpr double kMaxExponent = 700.0;

class TrialSampler {
public:
    TrialSampler(const ConcentrationConfig& config, Index trial)
        : config_(config), engine_(make_engine(config.seed, Stream::Concentration, trial)) {}

    double weight(Index t) {
        switch (config_.weights) {
            case WeightProcess::Uniform:
                return uniform_(engine_);
            case WeightProcess::Zero:
                return 0.0;
            case WeightProcess::Replay:
                return config_.replay[t % config_.replay.size()];
        }
        return 0.0;
    }

    double noise() {
        if (config_.noise == NoiseFamily::Gaussian) return config_.sigma * normal_(engine_);
        return config_.sigma * (coin_(engine_) ? 1.0 : -1.0);
    }

private:
    const ConcentrationConfig& config_;
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::bernoulli_distribution coin_{0.5};
};

}  // namespace

void ConcentrationConfig::validate() const {
    if (length < 1 || trials < 1) throw std::domain_error("concentration check needs length >= 1 and trials >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0, 1)");
    if (!(sigma >= 0.0)) throw std::domain_error("sigma must be nonnegative");
    if (weights == WeightProcess::Replay) {
        if (replay.empty()) throw std::domain_error("replayed weight process is empty");
        for (double v : replay) {
            if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("replayed weights must lie in [0, 1]");
        }
    }
}

double self_normalized_bound(double sigma, double v_sum, double delta) {
    const double w = 1.0 + v_sum;
    return std::sqrt(2.0 * sigma * sigma * std::log(std::sqrt(w) / delta) * w);
}

BoundCheck check_self_normalized_bound(const ConcentrationConfig& config) {
    config.validate();
    std::vector<char> violated(config.trials, 0);
    parallel_for(config.trials, [&](Index trial) {
        TrialSampler sampler(config, trial);
        double s = 0.0;
        double v_sum = 0.0;
        for (Index t = 0; t < config.length; ++t) {
            const double v = sampler.weight(t);
            s += v * sampler.noise();
            v_sum += v * v;
        }
        const double bound = config.bound_multiplier * self_normalized_bound(config.sigma, v_sum, config.delta);
        violated[trial] = std::abs(s) > bound ? 1 : 0;
    });
    BoundCheck out;
    out.trials = config.trials;
    for (char v : violated) out.violations += static_cast<Index>(v);
    out.rate = static_cast<double>(out.violations) / static_cast<double>(out.trials);
    return out;
}

MartingaleCheck check_supermartingale(const ConcentrationConfig& config, double eta) {
    config.validate();
    if (!(config.sigma > 0.0)) throw std::domain_error("supermartingale check needs sigma > 0");
    if (!std::isfinite(eta)) throw std::domain_error("eta must be finite");

    std::vector<double> exponents(config.trials, 0.0);
    parallel_for(config.trials, [&](Index trial) {
        TrialSampler sampler(config, trial);
        double e = 0.0;
        for (Index t = 0; t < config.length; ++t) {
            const double v = sampler.weight(t);
            e += eta * sampler.noise() * v / config.sigma - 0.5 * eta * eta * v * v;
        }
        exponents[trial] = e;
    });

    MartingaleCheck out;
    out.trials = config.trials;
    double sum = 0.0;
    double sum_sq = 0.0;
    Index used = 0;
    for (double e : exponents) {
        if (e > kMaxExponent) {
            ++out.overflowed;
            continue;
        }
        const double w = std::exp(e);
        sum += w;
        sum_sq += w * w;
        ++used;
    }
    if (used > 0) {
        out.mean = sum / static_cast<double>(used);
        const double var = used > 1 ? (sum_sq - static_cast<double>(used) * out.mean * out.mean) / static_cast<double>(used - 1) : 0.0;
        out.standard_error = std::sqrt(std::max(0.0, var) / static_cast<double>(used));
    }
    return out;
}

std::string_view to_string(NoiseFamily family) {
    return family == NoiseFamily::Gaussian ? "gaussian" : "rademacher";
}

NoiseFamily parse_noise_family(std::string_view name) {
    if (name == "gaussian") return NoiseFamily::Gaussian;
    if (name == "rademacher") return NoiseFamily::Rademacher;
    throw std::invalid_argument("unknown noise family '" + std::string(name) + "'");
}

}  // namespace colsafe
