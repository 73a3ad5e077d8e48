#pragma once

#include <cstddef>
#include <functional>

namespace cpdyn {

// CPDYN_THREADS if set to a positive integer, otherwise hardware concurrency
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Exceptions are
// rethrown on the calling thread (the one with the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cpdyn
