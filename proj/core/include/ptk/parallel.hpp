#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ptk {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Order-preserving map. Each worker owns a contiguous chunk of the output, so
// the result does not depend on the thread count.
template <class T, class F>
auto parallel_map(const std::vector<T>& in, F&& f, unsigned threads = 0)
    -> std::vector<decltype(f(in[0]))> {
    using R = decltype(f(in[0]));
    std::vector<R> out(in.size());
    const std::size_t n = in.size();
    if (n == 0) return out;
    const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(in[i]);
        return out;
    }
    std::exception_ptr first_error;
    std::mutex err_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) out[i] = f(in[i]);
                } catch (...) {
                    std::lock_guard lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace ptk
