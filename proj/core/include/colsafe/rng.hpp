#pragma once

#include <cstdint>
#include <random>

namespace colsafe {

/// Named random streams. Each consumer draws from its own stream so that adding
/// draws in one place, or running trials in parallel, never shifts another.
enum class Stream : std::uint64_t {
    ProblemNoise = 1,
    Concentration = 2,
    Repeat = 3,
    Dataset = 4,
};

/// Counter-based seed derivation: SplitMix64 finalizer over (base, stream, counter).
std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t counter);

inline std::mt19937_64 make_engine(std::uint64_t base, Stream stream, std::uint64_t counter) {
    return std::mt19937_64(derive_seed(base, stream, counter));
}

}  // namespace colsafe
