#pragma once

#include <cstddef>
#include <functional>

namespace wpmix {

// Worker cap: WPMIX_THREADS when set (must parse as a positive integer),
// otherwise the hardware concurrency (at least 1).
std::size_t thread_budget();

// Runs fn(i) for every i in [0, n) on up to thread_budget() workers, each
// owning a contiguous index range. Callers must write results into slots
// addressed by i only; with that discipline the output is identical for
// every thread count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wpmix
