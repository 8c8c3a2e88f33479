#pragma once

#include <cstddef>
#include <functional>

namespace graphlab {

// Number of worker threads: the LAB_THREADS environment variable when set,
// otherwise the hardware concurrency.
std::size_t thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; results
// must be written to per-index slots so the outcome is independent of the
// thread count and schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace graphlab
