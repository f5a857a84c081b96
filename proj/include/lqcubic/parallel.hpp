#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lqcubic {

/// Worker count used by the parallel kernels. 0 selects hardware_concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs fn(task) for task in [0, n_tasks). Tasks are claimed dynamically, so callers must
/// write results into per-task slots and reduce them in task order afterwards.
template <class Fn>
void parallel_for(std::size_t n_tasks, Fn&& fn) {
    unsigned workers = std::min<std::size_t>(thread_count(), n_tasks);
    if (workers <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= n_tasks) return;
            try {
                fn(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n_tasks);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace lqcubic
