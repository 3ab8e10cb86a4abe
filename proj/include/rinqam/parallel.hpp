#pragma once

#include <cstddef>
#include <functional>

namespace rinqam {

// Worker count for a request; 0 means all hardware threads.
int resolve_threads(int requested);

// Runs fn(i) for every i in [0, n) across workers. Items are claimed
// atomically, so per-item outputs must not depend on scheduling order.
// The first exception thrown by any item is rethrown to the caller.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace rinqam
