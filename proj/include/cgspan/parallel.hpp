#ifndef CGSPAN_PARALLEL_HPP_
#define CGSPAN_PARALLEL_HPP_

#include <cstddef>
#include <thread>
#include <vector>

namespace cgspan {

// Static-partition parallel loop. Results must be written to preallocated,
// index-disjoint slots so the outcome is identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += w) fn(i);
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace cgspan

#endif  // CGSPAN_PARALLEL_HPP_
