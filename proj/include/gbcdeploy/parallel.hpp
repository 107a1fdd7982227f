#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace gbcdeploy {

/// Splits [0, count) into contiguous chunks, one worker thread per chunk.
/// Callers must ensure chunk results are independent so the outcome is
/// value-identical to the sequential run. threads <= 1 runs inline.
template <typename Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace gbcdeploy
