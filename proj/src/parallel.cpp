#include "morreylab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace morreylab {

namespace {

std::atomic<int> g_threads{0}; // 0 = not yet resolved

int resolve_default() {
    if (const char* env = std::getenv("MORREYLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

int thread_count() {
    int t = g_threads.load(std::memory_order_relaxed);
    if (t == 0) {
        t = resolve_default();
        g_threads.store(t, std::memory_order_relaxed);
    }
    return t;
}

void set_thread_count(int n) {
    g_threads.store(n < 1 ? 1 : n, std::memory_order_relaxed);
}

namespace {
thread_local bool g_in_parallel = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int nt = thread_count();
    if (nt <= 1 || g_in_parallel || n < 2 * kReductionBlock) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        g_in_parallel = true;
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            const std::size_t lo = b * kReductionBlock;
            if (lo >= n) return;
            const std::size_t hi = std::min(n, lo + kReductionBlock);
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt) - 1);
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    g_in_parallel = false;
    for (auto& th : pool) th.join();
}

double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
    const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partials(nblocks, 0.0);
    parallel_for(nblocks, [&](std::size_t b) {
        const std::size_t lo = b * kReductionBlock;
        const std::size_t hi = std::min(n, lo + kReductionBlock);
        CompensatedSum s;
        for (std::size_t i = lo; i < hi; ++i) s.add(term(i));
        partials[b] = s.value();
    });
    return block_sum(partials);
}

double block_sum(const std::vector<double>& partials) {
    CompensatedSum s;
    for (double p : partials) s.add(p);
    return s.value();
}

} // namespace morreylab
