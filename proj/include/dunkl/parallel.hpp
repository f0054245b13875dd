#pragma once

#include <cstddef>
#include <functional>

namespace dunkl {

// Worker count used by sweeps; 0 means hardware concurrency.
void set_num_threads(unsigned n);
unsigned num_threads();

// Runs fn(i) for i in [0, n). Static block partition, so results written to
// per-index slots are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dunkl
