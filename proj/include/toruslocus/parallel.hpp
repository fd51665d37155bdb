#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace toruslocus {

/// Worker cap: TORUS_LOCUS_THREADS if set (values < 1 clamp to 1), else the
/// hardware count.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("TORUS_LOCUS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Run fn(i) for i in [0, n). Each index writes only its own slot of whatever
/// the caller preallocated, so results are identical for any worker count —
/// parallelism never reorders output. Chunks are contiguous index ranges.
/// The first exception thrown by any worker is rethrown after join.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    unsigned workers = std::min<size_t>(thread_budget(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mu;
    size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace toruslocus
