#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace poafd::detail {

// Runs fn(i) for i in [0, count), split into contiguous chunks over the
// available hardware threads. fn must only write to slot i of its outputs.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_chunk = 1024)
{
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, (count + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
}

}  // namespace poafd::detail
