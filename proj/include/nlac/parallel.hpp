#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace nlac::par {

/// Global worker count. 0 = hardware concurrency.
int thread_count();
void set_thread_count(int threads);

/// Run f(i) for i in [0, count) on the worker pool. f must be writable to
/// disjoint state per index.
template <class F>
void parallel_for(std::size_t count, F&& f) {
    const int workers = thread_count();
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, count) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

/// Deterministic sum of per-index terms: indices are grouped into fixed-size
/// blocks, each block is summed sequentially, and the block partials are
/// combined in a fixed pairwise tree. The result is bit-identical for any
/// worker count.
template <class Term>
double deterministic_sum(std::size_t count, Term&& term, std::size_t block = 1024) {
    if (count == 0) return 0.0;
    const std::size_t blocks = (count + block - 1) / block;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t lo = b * block;
        const std::size_t hi = std::min(count, lo + block);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[b] = s;
    });
    // Fixed pairwise tree over block partials.
    std::vector<double> level = std::move(partial);
    while (level.size() > 1) {
        std::vector<double> up((level.size() + 1) / 2, 0.0);
        for (std::size_t i = 0; i < up.size(); ++i) {
            const std::size_t a = 2 * i, b2 = 2 * i + 1;
            up[i] = b2 < level.size() ? level[a] + level[b2] : level[a];
        }
        level = std::move(up);
    }
    return level[0];
}

}  // namespace nlac::par
