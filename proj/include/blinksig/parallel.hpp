#pragma once

#include <cstddef>
#include <functional>

namespace blinksig {

/// Worker count: BLINKSIG_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, count) on up to worker_count() threads. Callers
/// write results into pre-sized slots, so output order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace blinksig
