#include "colsafe/nw_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace colsafe {
namespace {

constexpr Index kBufferCapacity = 32;

std::vector<double> key_of(const Point& p) {
    return std::vector<double>(p.data(), p.data() + p.size());
}

}  // namespace

void EstimatorConfig::validate() const {
    kernel.validate();
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::domain_error("noise scale sigma must be positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::domain_error("confidence delta must lie in (0, 1)");
    }
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        throw std::domain_error("Lipschitz constant must be positive");
    }
}

double confidence_alpha(double kappa, double delta) {
    if (kappa <= 1.0) {
        return std::sqrt(std::log(std::sqrt(2.0) / delta));
    }
    return std::sqrt(kappa * std::log(std::sqrt(1.0 + kappa) / delta));
}

double confidence_beta(const EstimatorConfig& config, double kappa) {
    if (!(kappa > 0.0)) return kInf;
    return config.lipschitz * config.kernel.bandwidth +
           2.0 * config.sigma * confidence_alpha(kappa, config.delta) / kappa;
}

NwEstimator::NwEstimator(EstimatorConfig config, Index dim, Index outputs)
    : config_(std::move(config)), dim_(dim), outputs_(outputs) {
    config_.validate();
    if (dim_ == 0 || outputs_ == 0) {
        throw std::domain_error("estimator needs a positive dimension and output count");
    }
}

void NwEstimator::ingest(Observation obs) {
    if (static_cast<Index>(obs.point.size()) != dim_) {
        throw std::domain_error("observation point has wrong dimension");
    }
    if (static_cast<Index>(obs.values.size()) != outputs_) {
        throw std::domain_error("observation has wrong number of measured outputs");
    }
    if (!obs.point.allFinite() || !obs.values.allFinite()) {
        throw std::domain_error("observation contains non-finite values");
    }

    const Index t = observations_.size();
    auto key = key_of(obs.point);
    auto it = entry_lookup_.find(key);
    if (it == entry_lookup_.end()) {
        const Index id = entries_.size();
        entries_.push_back(Entry{obs.point, 0.0, Measurement::Zero(static_cast<Eigen::Index>(outputs_)), {}});
        it = entry_lookup_.emplace(std::move(key), id).first;
        push_to_index(id);
    }
    Entry& entry = entries_[it->second];
    entry.count += 1.0;
    entry.sums += obs.values;
    entry.observations.push_back(t);
    observations_.push_back(std::move(obs));
}

void NwEstimator::push_to_index(Index entry) {
    buffer_.push_back(entry);
    if (buffer_.size() < kBufferCapacity) return;

    // Binary-counter merge: level k holds kBufferCapacity * 2^k entries.
    std::vector<Index> merged = std::move(buffer_);
    buffer_.clear();
    Index level = 0;
    while (level < levels_.size() && levels_[level].has_value()) {
        auto& entries = levels_[level]->entries;
        merged.insert(merged.end(), entries.begin(), entries.end());
        levels_[level].reset();
        ++level;
    }
    if (level == levels_.size()) levels_.emplace_back();

    std::vector<Point> points;
    points.reserve(merged.size());
    for (Index id : merged) points.push_back(entries_[id].point);
    levels_[level] = Level{KdTree(std::move(points)), std::move(merged)};
}

template <class F>
void NwEstimator::for_each_entry_near(const Point& query, F&& f) const {
    const double radius = config_.kernel.bandwidth;
    for (const auto& level : levels_) {
        if (!level) continue;
        level->tree.for_each_in_ball(query, radius, [&](Index i, double d) { f(level->entries[i], d); });
    }
    for (Index id : buffer_) {
        const double d = distance(query, entries_[id].point);
        if (d <= radius) f(id, d);
    }
}

void NwEstimator::check_query(const Point& query) const {
    if (static_cast<Index>(query.size()) != dim_) {
        throw std::domain_error("query point has wrong dimension");
    }
}

double NwEstimator::accumulate(const Point& query, Measurement* weighted_sums) const {
    check_query(query);
    double kappa = 0.0;
    if (weighted_sums) weighted_sums->setZero(static_cast<Eigen::Index>(outputs_));
    for_each_entry_near(query, [&](Index id, double d) {
        const double w = evaluate_distance(config_.kernel, d);
        if (w <= 0.0) return;
        const Entry& e = entries_[id];
        kappa += w * e.count;
        if (weighted_sums) *weighted_sums += w * e.sums;
    });
    return kappa;
}

Index NwEstimator::indexed_count() const {
    double total = 0.0;
    for (const auto& level : levels_) {
        if (!level) continue;
        for (Index id : level->entries) total += entries_[id].count;
    }
    for (Index id : buffer_) total += entries_[id].count;
    return static_cast<Index>(total);
}

double NwEstimator::kappa(const Point& query) const { return accumulate(query, nullptr); }

std::optional<double> NwEstimator::mu(const Point& query, Index output) const {
    if (output >= outputs_) {
        throw std::domain_error("output index out of range");
    }
    Measurement sums;
    const double k = accumulate(query, &sums);
    if (!(k > 0.0)) return std::nullopt;
    return sums[static_cast<Eigen::Index>(output)] / k;
}

double NwEstimator::alpha(const Point& query) const {
    return confidence_alpha(kappa(query), config_.delta);
}

double NwEstimator::beta(const Point& query) const {
    return confidence_beta(config_, kappa(query));
}

Estimate NwEstimator::estimate(const Point& query) const {
    Measurement sums;
    Estimate out;
    out.kappa = accumulate(query, &sums);
    out.alpha = confidence_alpha(out.kappa, config_.delta);
    out.beta = confidence_beta(config_, out.kappa);
    if (out.kappa > 0.0) out.mu = sums / out.kappa;
    return out;
}

std::vector<Index> NwEstimator::radius_neighbors(const Point& query) const {
    check_query(query);
    std::vector<Index> result;
    for_each_entry_near(query, [&](Index id, double) {
        const auto& obs = entries_[id].observations;
        result.insert(result.end(), obs.begin(), obs.end());
    });
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace colsafe
