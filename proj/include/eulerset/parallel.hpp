#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eulerset {

// Runs fn(i) for i in [0, count) across `jobs` threads. Each index is
// processed exactly once; callers write results into per-index slots, so
// output never depends on the worker count or scheduling.
inline void parallel_for(std::uint64_t count, unsigned jobs,
                         const std::function<void(std::uint64_t)>& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    if (jobs > count)
        jobs = static_cast<unsigned>(count);

    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const std::uint64_t chunk = (count + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::uint64_t begin = std::uint64_t(w) * chunk;
        const std::uint64_t end = std::min(count, begin + chunk);
        workers.emplace_back([&, begin, end] {
            try {
                for (std::uint64_t i = begin; i < end; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : workers)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace eulerset
