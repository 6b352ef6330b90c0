#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace regsplit {

// Thread cap: REGIME_SPLIT_THREADS if set, else hardware concurrency.
inline unsigned resolve_threads() {
    if (const char* env = std::getenv("REGIME_SPLIT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n). Each index writes only its own output slot,
// so results are independent of the schedule and thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned max_threads = 0) {
    unsigned nthreads = resolve_threads();
    if (max_threads > 0 && max_threads < nthreads) nthreads = max_threads;
    if (nthreads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> threads;
    const unsigned spawn = static_cast<unsigned>(
        std::min<std::size_t>(nthreads, n));
    threads.reserve(spawn);
    for (unsigned t = 1; t < spawn; ++t) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
}

}  // namespace regsplit
