#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dimerquench {

/// Worker cap: DIMERQUENCH_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
[[nodiscard]] unsigned max_threads();

namespace detail {
/// Set on worker threads so that nested parallel_for calls run inline.
inline thread_local bool in_parallel_region = false;
} // namespace detail

/**
 * Runs body(begin, end) over contiguous blocks of [0, count). Blocks are
 * disjoint, so writes into pre-sized per-index storage stay deterministic
 * regardless of the thread count. The first exception thrown by any block
 * is rethrown on the calling thread. Calls made from inside a block run
 * serially on that worker.
 */
template <class Body> void parallel_for(std::size_t count, Body &&body) {
    if (count == 0) {
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(max_threads(), count);
    if (workers <= 1 || detail::in_parallel_region) {
        body(std::size_t{0}, count);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            detail::in_parallel_region = true;
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace dimerquench
