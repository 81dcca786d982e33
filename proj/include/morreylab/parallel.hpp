#pragma once

#include <cstddef>
#include <functional>

#include "morreylab/summation.hpp"

namespace morreylab {

// Thread cap: MORREYLAB_THREADS env var, else hardware concurrency.
// set_thread_count overrides at runtime (used by tests and the CLI).
int thread_count();
void set_thread_count(int n);

// Static block partition of [0, n). fn(i) must only write to slots owned
// by index i; results are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Deterministic parallel reduction: term(i) summed over i in [0, n) via
// per-block compensated partial sums (block size kReductionBlock),
// combined serially in block order.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& term);

} // namespace morreylab
