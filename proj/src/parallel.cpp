#include "rebalance/parallel.hpp"

#include <atomic>

namespace rebalance {

namespace {
std::atomic<unsigned> configured_limit{0};
}

void set_thread_limit(unsigned limit) {
    configured_limit.store(limit);
}

unsigned thread_limit() {
    unsigned limit = configured_limit.load();
    if (limit == 0) {
        limit = std::max(1u, std::thread::hardware_concurrency());
    }
    return limit;
}

} // namespace rebalance
