#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace mubcert::detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Callers keep results
// deterministic by writing into preallocated per-index slots and merging in
// index order afterwards; thread count must never influence observable output.
template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    int nt = resolve_threads(threads);
    if (nt <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t base = n / workers, rem = n % workers, start = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t len = base + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, start, len] { fn(start, start + len); });
        start += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace mubcert::detail
