#pragma once

#include <cstddef>
#include <functional>

namespace scatterlab {

// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index is visited
// exactly once; callers write into preallocated slots so results do not
// depend on scheduling. jobs <= 1 runs inline. The first exception thrown by
// any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace scatterlab
