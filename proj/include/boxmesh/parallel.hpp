#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace boxmesh {

/// Worker count: `requested` if positive, else $BOXMESH_WORKERS, else the
/// number of hardware threads.
int resolve_workers(int requested);

/// Runs body(begin, end, worker) over contiguous chunks of [0, n). The first
/// exception thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_chunks(std::size_t n, int workers, Body&& body) {
    const std::size_t w = std::max<std::size_t>(
        1, std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n));
    if (w == 1) {
        body(std::size_t{0}, n, 0);
        return;
    }
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end, t] {
            try {
                body(begin, end, static_cast<int>(t));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace boxmesh
