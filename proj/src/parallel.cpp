#include "nlac/parallel.hpp"

namespace nlac::par {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
    const int t = g_threads.load();
    if (t > 0) return t;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void set_thread_count(int threads) { g_threads.store(threads); }

}  // namespace nlac::par
