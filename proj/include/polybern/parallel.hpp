#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace polybern {

/// Runs fn(0..n-1) across up to `jobs` threads. Work items must be
/// independent and write only to their own slots; callers merge results in
/// index order, so output stays deterministic regardless of the schedule.
inline void parallel_for(long n, int jobs, const std::function<void(long)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nthreads = static_cast<int>(std::min<long>(jobs, n));
    std::atomic<long> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t)
        workers.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& w : workers) w.join();
}

}  // namespace polybern
