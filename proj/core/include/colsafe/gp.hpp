#pragma once

#include <utility>
#include <vector>

#include "colsafe/loop.hpp"

namespace colsafe {

struct GpConfig {
    double length_scale = 0.1;
    double signal_variance = 1.0;
    double noise_variance = 1e-4;
    double scale = 2.0;  // confidence multiplier b in m ± b·s

    void validate() const;

    bool operator==(const GpConfig&) const = default;
};

/// Matérn ν = 3/2 covariance at distance r.
double matern32(const GpConfig& config, double r);

/**
 * Exact GP regression with one shared Matérn-3/2 kernel for all outputs and a
 * zero prior mean. fit() rebuilds and factorizes the dense n x n kernel matrix
 * every time; there is no incremental update.
 */
class GpModel {
public:
    GpModel(GpConfig config, Index dim, Index outputs);

    /// Cubic-cost refit. Retries with diagonal jitter up to 1e-6, then throws std::runtime_error.
    void fit(const std::vector<Observation>& observations);

    struct Prediction {
        Measurement mean;
        double variance = 0.0;  // latent variance, shared by all outputs
    };
    Prediction predict(const Point& a) const;

    /// [m − b·s, m + b·s] per output.
    std::pair<Measurement, Measurement> interval(const Point& a, double scale) const;

    /// Batched predictions for many points: means (points x outputs) and variances.
    void predict_many(const std::vector<Point>& points, Eigen::MatrixXd& means, Eigen::VectorXd& variances) const;

    Index size() const { return static_cast<Index>(inputs_.size()); }
    double jitter() const { return jitter_; }
    const GpConfig& config() const { return config_; }

private:
    Eigen::VectorXd cross_covariance(const Point& a) const;

    GpConfig config_;
    Index dim_;
    Index outputs_;
    std::vector<Point> inputs_;
    Eigen::LLT<Eigen::MatrixXd> chol_;
    Eigen::MatrixXd weights_;  // (K + σ²I)^{-1} Y
    double jitter_ = 0.0;
};

/// m ± b·s intervals from a GP refitted on every query.
class GpConfidenceModel final : public ConfidenceModel {
public:
    GpConfidenceModel(GpConfig config, Index dim, Index outputs);

    void ingest(const Observation& obs) override { observations_.push_back(obs); }
    IntervalTable intervals(const DomainGrid& grid) override;
    Index size() const override { return observations_.size(); }
    const GpModel& model() const { return model_; }

private:
    GpModel model_;
    std::vector<Observation> observations_;
};

/// SafeOpt-style baseline: the same loop and trace, with GP intervals in place of μ ± β.
RunResult run_safeopt_baseline(const Problem& problem, const GpConfig& config, const RunOptions& options);

}  // namespace colsafe
