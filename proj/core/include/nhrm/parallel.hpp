#pragma once

#include <cstddef>
#include <functional>

namespace nhrm {

// Runs fn(i) for i in [0, n) across `workers` threads (0 = hardware
// concurrency). Indices are handed out atomically; fn must be safe to call
// concurrently for distinct i. The first exception thrown by any worker is
// rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace nhrm
