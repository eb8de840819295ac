#pragma once

#include <cstddef>
#include <functional>

namespace rigidity {

/// Worker count: RIGIDITY_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once; callers write results into index-addressed slots so
/// output order never depends on scheduling. The first exception thrown by any
/// body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rigidity
