// parallel.hpp - ordered parallel map over an index range.
//
// Worker count comes from OFS_WORKERS (default: hardware concurrency).
// Results land at their index, so output never depends on scheduling. The
// exception from the lowest failing index is rethrown.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ofs {

inline unsigned worker_count() {
    if (const char* env = std::getenv("OFS_WORKERS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) {
                return static_cast<unsigned>(n);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <typename R, typename F>
std::vector<R> parallel_map(std::size_t n, F&& f, unsigned workers = worker_count()) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace ofs
