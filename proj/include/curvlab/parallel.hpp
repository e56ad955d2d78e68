#pragma once

#include <cstddef>
#include <functional>

namespace curvlab {

// Worker count: CURVLAB_WORKERS if set to a positive integer, otherwise
// hardware concurrency (at least 1).
int worker_count();

// Runs fn(i) for i in [0, n) on worker_count() threads. Iterations must be
// independent; results should be written to pre-sized slots indexed by i so
// the outcome does not depend on scheduling. Exceptions from workers are
// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace curvlab
