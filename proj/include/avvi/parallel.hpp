#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace avvi {

/// Worker budget: AVVI_THREADS when set (>= 1), else hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("AVVI_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Runs fn(i) for i in [0, n); work is chunked over the thread budget.
/// Callers are responsible for making writes disjoint per index.
template <typename F>
void parallel_for(long n, F&& fn) {
    const int workers = thread_budget();
    if (workers <= 1 || n < 32) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace avvi
