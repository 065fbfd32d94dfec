#pragma once

#include <cstddef>
#include <functional>

namespace sigpath {

// Worker count: SIGPATH_THREADS if set to a positive integer, else hardware concurrency (min 1).
int thread_count();

// Calls fn(i) for every i in [0, n). Work is split into contiguous blocks, one per worker;
// fn must write only to slots owned by i. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sigpath
