#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace hublab {

inline unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(worker_id) on `workers` threads and joins them.
inline void run_workers(unsigned workers, const std::function<void(unsigned)>& fn) {
    workers = resolve_workers(workers);
    if (workers == 1) {
        fn(0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(fn, t);
    for (auto& t : threads) t.join();
}

// Data-parallel loop over [0, n) with a shared chunked cursor.
inline void parallel_for(std::uint64_t n, unsigned workers, const std::function<void(std::uint64_t)>& fn) {
    workers = resolve_workers(workers);
    if (workers == 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (std::uint64_t(workers) * 8));
    run_workers(workers, [&](unsigned) {
        while (true) {
            const std::uint64_t begin = cursor.fetch_add(chunk);
            if (begin >= n) break;
            const std::uint64_t end = std::min(n, begin + chunk);
            for (std::uint64_t i = begin; i < end; ++i) fn(i);
        }
    });
}

}  // namespace hublab
