#pragma once

#include <cstddef>
#include <functional>

namespace curvekit {

// Worker count: hardware concurrency, capped by CURVEKIT_THREADS when set.
std::size_t worker_count();

// Runs body(i) for every i in [0, count). Iterations must write to disjoint
// slots; results are therefore independent of scheduling. The first
// exception thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace curvekit
