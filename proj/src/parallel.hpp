#pragma once

#include "legmoment/op_counter.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace legmoment::detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end, counter) over contiguous chunks of [0, count).
/// Chunks are a pure function of (count, workers); each worker gets its own
/// counter, merged into `counter` in worker order afterwards. Exceptions are
/// rethrown on the calling thread (first worker's wins).
template <class Body>
void parallel_chunks(std::size_t count, unsigned workers, OpCounter* counter, Body&& body) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
    if (workers == 1) {
        body(std::size_t{0}, count, counter);
        return;
    }
    std::vector<OpCounter> local(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    body(begin, end, counter ? &local[w] : nullptr);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    if (counter)
        for (const auto& c : local) counter->merge(c);
}

} // namespace legmoment::detail
