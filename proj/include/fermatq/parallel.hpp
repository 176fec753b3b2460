#pragma once

#include "fermatq/bigint.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace fq {

// Runs jobs 0..n-1 on a small worker pool. Each job writes into its own
// result slot, so the merged output is deterministic regardless of thread
// count or scheduling.
template <typename Result>
std::vector<Result> run_jobs(std::size_t n, unsigned threads,
                             const std::function<Result(std::size_t)>& job) {
    std::vector<Result> results(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = job(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            results[i] = job(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned count = std::min<std::size_t>(threads, n);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

struct Chunk {
    u64 lo;
    u64 hi; // inclusive
};

// Splits [lo, hi] into chunks of at most `size` values.
inline std::vector<Chunk> make_chunks(u64 lo, u64 hi, u64 size) {
    std::vector<Chunk> chunks;
    for (u64 start = lo; start <= hi;) {
        u64 end = (hi - start >= size - 1) ? start + size - 1 : hi;
        chunks.push_back({start, end});
        if (end == hi) break;
        start = end + 1;
    }
    return chunks;
}

} // namespace fq
