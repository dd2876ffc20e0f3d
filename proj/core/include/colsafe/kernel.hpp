#pragma once

#include <string>
#include <string_view>

#include "colsafe/types.hpp"

namespace colsafe {

enum class KernelFamily { Epanechnikov, Boxcar, TruncatedMatern32 };

/**
 * Compactly supported radial kernel K with bandwidth λ.
 *
 * The base kernel is defined on the normalized distance v = ‖a − a'‖ / λ and
 * vanishes for v > 1. The boundary v = 1 is part of the support.
 * `length_scale` only affects TruncatedMatern32 and is measured in the same
 * normalized units as v.
 */
struct KernelSpec {
    KernelFamily family = KernelFamily::Epanechnikov;
    double bandwidth = 0.5;
    double length_scale = 0.1;

    /// Upper bound of the base kernel. All shipped families peak at v = 0 with value 1.
    double c_k() const { return 1.0; }

    /// Throws std::domain_error unless bandwidth and length scale are positive and finite.
    void validate() const;

    bool operator==(const KernelSpec&) const = default;
};

/// Base kernel K(v). Throws std::domain_error for negative or NaN v.
double evaluate_base(const KernelSpec& spec, double v);

/// Normalized pairwise weight K_λ(a, a') = K(‖a − a'‖ / λ) / c_K, in [0, 1].
double evaluate_pair(const KernelSpec& spec, const Point& a, const Point& b);

/// Same as evaluate_pair for an already computed Euclidean distance.
double evaluate_distance(const KernelSpec& spec, double dist);

std::string_view to_string(KernelFamily family);

/// Accepts "epanechnikov", "boxcar", "truncated-matern32". Throws std::invalid_argument.
KernelFamily parse_kernel_family(std::string_view name);

}  // namespace colsafe
