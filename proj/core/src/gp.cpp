#include "colsafe/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace colsafe {

void GpConfig::validate() const {
    if (!(length_scale > 0.0) || !(signal_variance > 0.0) || !(noise_variance >= 0.0) || !(scale > 0.0)) {
        throw std::domain_error("invalid GP configuration");
    }
}

double matern32(const GpConfig& config, double r) {
    const double s = std::sqrt(3.0) * r / config.length_scale;
    return config.signal_variance * (1.0 + s) * std::exp(-s);
}

GpModel::GpModel(GpConfig config, Index dim, Index outputs) : config_(config), dim_(dim), outputs_(outputs) {
    config_.validate();
    if (dim_ == 0 || outputs_ == 0) throw std::domain_error("GP needs a positive dimension and output count");
}

void GpModel::fit(const std::vector<Observation>& observations) {
    const auto n = static_cast<Eigen::Index>(observations.size());
    inputs_.clear();
    inputs_.reserve(observations.size());
    Eigen::MatrixXd Y(n, static_cast<Eigen::Index>(outputs_));
    for (Eigen::Index t = 0; t < n; ++t) {
        const auto& obs = observations[static_cast<Index>(t)];
        if (static_cast<Index>(obs.point.size()) != dim_ || static_cast<Index>(obs.values.size()) != outputs_) {
            throw std::domain_error("observation shape does not match GP");
        }
        if (!obs.values.allFinite()) throw std::domain_error("GP observations must be finite");
        inputs_.push_back(obs.point);
        Y.row(t) = obs.values.transpose();
    }
    jitter_ = 0.0;
    if (n == 0) {
        weights_.resize(0, static_cast<Eigen::Index>(outputs_));
        return;
    }

    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            K(i, j) = K(j, i) = matern32(config_, distance(inputs_[static_cast<Index>(i)], inputs_[static_cast<Index>(j)]));
        }
    }
    K.diagonal().array() += config_.noise_variance;

    for (double jitter : {0.0, 1e-10, 1e-8, 1e-6}) {
        Eigen::MatrixXd A = K;
        A.diagonal().array() += jitter;
        chol_.compute(A);
        if (chol_.info() == Eigen::Success) {
            jitter_ = jitter;
            weights_ = chol_.solve(Y);
            return;
        }
    }
    throw std::runtime_error("GP kernel matrix is not positive definite even with jitter 1e-6");
}

Eigen::VectorXd GpModel::cross_covariance(const Point& a) const {
    if (static_cast<Index>(a.size()) != dim_) throw std::domain_error("query point has wrong dimension");
    Eigen::VectorXd k(static_cast<Eigen::Index>(inputs_.size()));
    for (Index t = 0; t < inputs_.size(); ++t) k[static_cast<Eigen::Index>(t)] = matern32(config_, distance(a, inputs_[t]));
    return k;
}

GpModel::Prediction GpModel::predict(const Point& a) const {
    Prediction p;
    if (inputs_.empty()) {
        if (static_cast<Index>(a.size()) != dim_) throw std::domain_error("query point has wrong dimension");
        p.mean = Measurement::Zero(static_cast<Eigen::Index>(outputs_));
        p.variance = config_.signal_variance;
        return p;
    }
    const Eigen::VectorXd k = cross_covariance(a);
    p.mean = weights_.transpose() * k;
    const Eigen::VectorXd v = chol_.matrixL().solve(k);
    p.variance = std::max(0.0, config_.signal_variance - v.squaredNorm());
    return p;
}

std::pair<Measurement, Measurement> GpModel::interval(const Point& a, double scale) const {
    const Prediction p = predict(a);
    const double half = scale * std::sqrt(p.variance);
    return {(p.mean.array() - half).matrix(), (p.mean.array() + half).matrix()};
}

void GpModel::predict_many(const std::vector<Point>& points, Eigen::MatrixXd& means, Eigen::VectorXd& variances) const {
    const auto m = static_cast<Eigen::Index>(points.size());
    const auto n = static_cast<Eigen::Index>(inputs_.size());
    if (n == 0) {
        means = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(outputs_));
        variances = Eigen::VectorXd::Constant(m, config_.signal_variance);
        return;
    }
    Eigen::MatrixXd Ks(n, m);
    for (Eigen::Index j = 0; j < m; ++j) Ks.col(j) = cross_covariance(points[static_cast<Index>(j)]);
    means = Ks.transpose() * weights_;
    const Eigen::MatrixXd V = chol_.matrixL().solve(Ks);
    variances = (config_.signal_variance - V.colwise().squaredNorm().array()).max(0.0).matrix().transpose();
}

GpConfidenceModel::GpConfidenceModel(GpConfig config, Index dim, Index outputs) : model_(config, dim, outputs) {}

IntervalTable GpConfidenceModel::intervals(const DomainGrid& grid) {
    model_.fit(observations_);
    Eigen::MatrixXd means;
    Eigen::VectorXd variances;
    model_.predict_many(grid.points(), means, variances);
    const Eigen::ArrayXd half = model_.config().scale * variances.array().sqrt();
    IntervalTable q;
    q.lower = (means.array().colwise() - half).matrix();
    q.upper = (means.array().colwise() + half).matrix();
    return q;
}

RunResult run_safeopt_baseline(const Problem& problem, const GpConfig& config, const RunOptions& options) {
    GpConfidenceModel model(config, problem.grid.dim(), problem.outputs());
    return run_safe_exploration(model, problem, options);
}

}  // namespace colsafe
