#pragma once

#include <cstddef>
#include <functional>

namespace curvelab {

// Worker count: CURVELAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
std::size_t worker_count();

// Calls body(i) for every i in [0, n) on up to worker_count() threads. Bodies
// must write only to slot i of their outputs. If any body throws, the
// exception of the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace curvelab
