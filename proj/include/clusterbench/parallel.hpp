#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace clusterbench {

/// Calls fn(i) for every i in [0, n), splitting the range into contiguous blocks across
/// `threads` workers. fn must only write to slots owned by i; results are then independent
/// of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    const std::size_t block = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(n, begin + block);
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                fn(i);
            }
        });
    }
}

} // namespace clusterbench
