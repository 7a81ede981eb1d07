#pragma once

#include <cstddef>
#include <functional>

namespace maglab {

// Worker count: MAGLAB_THREADS if set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
// visited exactly once; the first exception thrown by any body is rethrown
// after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace maglab
