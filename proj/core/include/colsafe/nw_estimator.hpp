#pragma once

#include <map>
#include <optional>
#include <vector>

#include "colsafe/kd_tree.hpp"
#include "colsafe/kernel.hpp"
#include "colsafe/types.hpp"

namespace colsafe {

/// One experiment: the evaluated point and its noisy measurements (reward first).
struct Observation {
    Point point;
    Measurement values;
    Index iteration = 0;
};

struct EstimatorConfig {
    KernelSpec kernel;
    double sigma = 0.01;     // sub-Gaussian noise scale
    double delta = 0.05;     // failure probability of the error bound
    double lipschitz = 1.0;  // shared Lipschitz constant of reward and constraints

    void validate() const;
};

/// Estimator output at a query point. `mu` is empty iff no observation lies within the bandwidth.
struct Estimate {
    std::optional<Measurement> mu;
    double kappa = 0.0;
    double alpha = 0.0;
    double beta = kInf;
};

/// α(κ, δ) of the error bound; continuous at κ = 1.
double confidence_alpha(double kappa, double delta);

/// β = Lλ + 2σα/κ, or +inf when κ = 0.
double confidence_beta(const EstimatorConfig& config, double kappa);

/**
 * Incremental Nadaraya-Watson estimator over all output indices.
 *
 * Repeated measurements at the same point are merged into one index entry that
 * carries a count and per-output sums, so the cost of a query depends on the
 * number of distinct points within the bandwidth rather than on n. Distinct
 * points live in a logarithmic family of static kd-trees: a small linear buffer
 * absorbs new points and equal-sized trees are merged and rebuilt, so every
 * query stays exact while rebuild cost is amortized.
 *
 * Ingest needs exclusive access; const queries may run concurrently.
 */
class NwEstimator {
public:
    NwEstimator(EstimatorConfig config, Index dim, Index outputs);

    void ingest(Observation obs);

    Index size() const { return observations_.size(); }
    Index dim() const { return dim_; }
    Index outputs() const { return outputs_; }
    const EstimatorConfig& config() const { return config_; }
    const std::vector<Observation>& observations() const { return observations_; }

    /// Number of observations reachable through the spatial index (always equals size()).
    Index indexed_count() const;

    double kappa(const Point& query) const;
    /// Weighted average of output i, or empty when κ = 0. Throws std::domain_error for i out of range.
    std::optional<double> mu(const Point& query, Index output) const;
    double alpha(const Point& query) const;
    double beta(const Point& query) const;
    Estimate estimate(const Point& query) const;

    /// Observation indices t with ‖query − a_t‖ <= λ, ascending.
    std::vector<Index> radius_neighbors(const Point& query) const;

private:
    struct Entry {
        Point point;
        double count = 0.0;
        Measurement sums;
        std::vector<Index> observations;
    };
    struct Level {
        KdTree tree;
        std::vector<Index> entries;  // tree index -> entry id
    };

    void check_query(const Point& query) const;
    void push_to_index(Index entry);
    template <class F>
    void for_each_entry_near(const Point& query, F&& f) const;
    /// Returns κ and fills the kernel-weighted sums of every output.
    double accumulate(const Point& query, Measurement* weighted_sums) const;

    EstimatorConfig config_;
    Index dim_;
    Index outputs_;
    std::vector<Observation> observations_;
    std::vector<Entry> entries_;
    std::map<std::vector<double>, Index> entry_lookup_;
    std::vector<Index> buffer_;
    std::vector<std::optional<Level>> levels_;
};

}  // namespace colsafe
