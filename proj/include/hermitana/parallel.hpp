// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_PARALLEL_HPP
#define HERMITANA_PARALLEL_HPP

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hermitana {

/// Worker count for grid sweeps: hardware concurrency, capped by the
/// HERMITANA_THREADS environment variable when set.
inline int worker_count()
{
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    if (const char* env = std::getenv("HERMITANA_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n)
            n = cap;
    }
    return n;
}

/// Runs fn(i) for i in [0, count). Each index is processed exactly once;
/// fn must only write to per-index slots so results stay deterministic.
inline void parallel_for(int count, const std::function<void(int)>& fn)
{
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < count; i += workers)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace hermitana

#endif
