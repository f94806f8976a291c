#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dppr {

/// Runs fn(i) for i in [0, count). With jobs > 1 indices are striped over
/// worker threads; each index does the same work regardless of scheduling,
/// so results written to per-index slots are identical for any job count.
/// The first exception thrown by a worker is rethrown on the caller.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (jobs > count) jobs = unsigned(count);
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    workers.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += jobs) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace dppr
