#pragma once

#include <algorithm>
#include <thread>
#include <vector>

#include "colsafe/types.hpp"

namespace colsafe {

/// Worker count: hardware concurrency, capped by the COLSAFE_THREADS environment variable.
Index thread_cap();

/// Runs f(k) for k in [0, count) over contiguous chunks. f must only touch its own outputs.
template <class F>
void parallel_for(Index count, F&& f, Index threads = thread_cap()) {
    threads = std::max<Index>(1, std::min(threads, count));
    if (threads <= 1) {
        for (Index k = 0; k < count; ++k) f(k);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const Index chunk = (count + threads - 1) / threads;
    for (Index w = 0; w < threads; ++w) {
        const Index begin = w * chunk;
        const Index end = std::min(count, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&f, begin, end] {
            for (Index k = begin; k < end; ++k) f(k);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace colsafe
