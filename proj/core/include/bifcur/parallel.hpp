#pragma once

#include <cstddef>
#include <functional>

namespace bifcur {

// Number of worker threads: BIFCUR_THREADS if set, else hardware concurrency.
int thread_count();

// Static block partition of [0, n) over the worker threads. Each index is
// processed exactly once by exactly one thread; results must go to disjoint
// slots so the outcome is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bifcur
