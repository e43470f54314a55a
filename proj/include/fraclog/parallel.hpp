#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace fraclog {

/// Worker count from FRACLOG_THREADS, else the hardware concurrency.
int thread_count();

/// Runs f(i) for i in [0, count) on contiguous index blocks. Callers write
/// each result to its own slot, so the outcome does not depend on the
/// number of threads.
template <class F>
void parallel_for(int count, F&& f) {
    const int threads = std::min(thread_count(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) {
            f(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const int lo = static_cast<int>(static_cast<long long>(count) * t / threads);
        const int hi = static_cast<int>(static_cast<long long>(count) * (t + 1) / threads);
        pool.emplace_back([lo, hi, t, &f, &errors] {
            try {
                for (int i = lo; i < hi; ++i) {
                    f(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace fraclog
