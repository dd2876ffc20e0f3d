#include "colsafe/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace colsafe {

void KernelSpec::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw std::domain_error("kernel bandwidth must be positive and finite");
    }
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
        throw std::domain_error("kernel length scale must be positive and finite");
    }
}

double evaluate_base(const KernelSpec& spec, double v) {
    if (!(v >= 0.0)) {
        throw std::domain_error("kernel argument must be nonnegative");
    }
    if (v > 1.0) {
        return 0.0;
    }
    switch (spec.family) {
        case KernelFamily::Epanechnikov:
            return 1.0 - v * v;
        case KernelFamily::Boxcar:
            return 1.0;
        case KernelFamily::TruncatedMatern32: {
            const double s = std::sqrt(3.0) * v / spec.length_scale;
            return (1.0 + s) * std::exp(-s);
        }
    }
    return 0.0;
}

double evaluate_distance(const KernelSpec& spec, double dist) {
    return evaluate_base(spec, dist / spec.bandwidth) / spec.c_k();
}

double evaluate_pair(const KernelSpec& spec, const Point& a, const Point& b) {
    if (a.size() != b.size()) {
        throw std::domain_error("kernel arguments have different dimensions");
    }
    return evaluate_distance(spec, distance(a, b));
}

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::Epanechnikov:
            return "epanechnikov";
        case KernelFamily::Boxcar:
            return "boxcar";
        case KernelFamily::TruncatedMatern32:
            return "truncated-matern32";
    }
    return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
    if (name == "epanechnikov") return KernelFamily::Epanechnikov;
    if (name == "boxcar") return KernelFamily::Boxcar;
    if (name == "truncated-matern32") return KernelFamily::TruncatedMatern32;
    throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

}  // namespace colsafe
