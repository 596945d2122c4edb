#pragma once

#include <cstddef>
#include <functional>

namespace peanut {

/// Worker cap from PEANUT_THREADS (0 or unset: hardware concurrency).
int thread_budget();

/// Runs fn(begin, end) over a partition of [0, n). Chunks are contiguous and
/// assigned by index, and callers only write to disjoint, index-addressed
/// slots, so the result is identical for every thread count. Reductions
/// must happen afterwards, in index order.
void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn);

}  // namespace peanut
