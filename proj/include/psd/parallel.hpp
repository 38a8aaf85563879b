#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace psd {

// Worker count from PSD_THREADS; defaults to the hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n). Work is cut into fixed chunks of `chunk`
// indices, independent of the number of threads.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t chunk = 64)
{
    const std::size_t nChunks = (n + chunk - 1) / chunk;
    const auto workers = static_cast<std::size_t>(std::max(1, thread_count()));
    auto run = [&](std::atomic<std::size_t>& next) {
        for (std::size_t c = next++; c < nChunks; c = next++) {
            const std::size_t end = std::min(n, (c + 1) * chunk);
            for (std::size_t i = c * chunk; i < end; ++i) body(i);
        }
    };
    std::atomic<std::size_t> next{0};
    if (workers == 1 || nChunks <= 1) {
        run(next);
        return;
    }
    std::vector<std::jthread> pool;
    const auto spawn = std::min(workers, nChunks) - 1;
    pool.reserve(spawn);
    for (std::size_t w = 0; w < spawn; ++w) pool.emplace_back([&] { run(next); });
    run(next);
}

// Sum of term(i) for i in [0, n). Chunk partials are accumulated in index
// order and combined in chunk order, so the result does not depend on the
// thread count.
template <class T, class Term>
T parallel_sum(std::size_t n, Term&& term, std::size_t chunk = 64)
{
    const std::size_t nChunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(nChunks, T{});
    parallel_for(
        nChunks,
        [&](std::size_t c) {
            T acc{};
            const std::size_t end = std::min(n, (c + 1) * chunk);
            for (std::size_t i = c * chunk; i < end; ++i) acc += term(i);
            partial[c] = acc;
        },
        1);
    T total{};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace psd
