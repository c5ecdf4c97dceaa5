#ifndef PSYCHOLEX_PARALLEL_HPP
#define PSYCHOLEX_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace psycholex {

/// Runs fn(i) for i in [0, n) across up to max_threads workers. Order of
/// execution is unspecified; fn must only touch slot i of any shared output.
template <typename Fn>
void parallel_for(std::size_t n, unsigned max_threads, Fn&& fn) {
    if (n == 0) return;
    unsigned workers = max_threads;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : threads) t.join();
}

} // namespace psycholex

#endif
