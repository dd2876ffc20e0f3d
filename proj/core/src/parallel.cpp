#include "colsafe/parallel.hpp"

#include <cstdlib>
#include <string>

namespace colsafe {

Index thread_cap() {
    Index n = std::max<Index>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COLSAFE_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<Index>(n, static_cast<Index>(cap));
        } catch (const std::exception&) {
            // unparsable values are ignored
        }
    }
    return n;
}

}  // namespace colsafe
