#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace rebalance {

/// Caps worker threads for row-parallel loops; 0 restores the hardware default.
void set_thread_limit(unsigned limit);
unsigned thread_limit();

/// Calls fn(i) for every i in [0, n) across worker threads. Each index is
/// handled exactly once, so results written per index are deterministic.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_limit(), n / 64 + 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

} // namespace rebalance
