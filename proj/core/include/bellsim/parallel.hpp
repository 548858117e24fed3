#pragma once

#include <cstddef>
#include <functional>

namespace bellsim {

/// Worker count: hardware concurrency, optionally capped by the
/// BELLSIM_THREADS environment variable (values < 1 mean 1).
std::size_t effective_threads();

/// Runs fn(i) for i in [0, n) across effective_threads() workers in fixed
/// contiguous blocks. fn must write only to its own index's slot; the
/// partition depends only on (n, thread count), never on scheduling, so
/// results are reproducible. The first exception thrown by any worker is
/// rethrown after all join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bellsim
