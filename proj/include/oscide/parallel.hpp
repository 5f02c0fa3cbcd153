#pragma once

#include <cstddef>
#include <functional>

namespace oscide::util {

/// Worker cap: OSCIDE_THREADS if set (positive integer), else hardware
/// concurrency, else 1.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Results must be written to index-owned slots;
/// chunked across workers, deterministic regardless of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace oscide::util
