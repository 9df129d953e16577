#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace flatlab {

inline unsigned effective_jobs(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace detail {

// Runs f(i) for i in [0, n). Each index is processed exactly once; callers
// keep determinism by writing results into per-index slots.
template <class F>
inline void parallel_for(std::size_t n, unsigned jobs, F&& f) {
    jobs = effective_jobs(jobs);
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(jobs < n ? jobs : n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

}  // namespace flatlab
