#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace symvoro {

/// Worker threads used by the row-parallel kernels. Initialised from the
/// SYMVORO_WORKERS environment variable, else the hardware concurrency.
int worker_count();
void set_worker_count(int n);

namespace detail {
// Set on threads already executing a parallel_for body; nested loops run inline.
inline thread_local bool in_parallel_region = false;
}  // namespace detail

/// Runs fn(i) for i in [0, n). Work items must write disjoint data; results
/// never depend on the number of workers.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1 || detail::in_parallel_region) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        const bool outer = detail::in_parallel_region;
        detail::in_parallel_region = true;
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        detail::in_parallel_region = outer;
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
}

}  // namespace symvoro
