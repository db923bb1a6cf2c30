#pragma once

#include <cstdint>
#include <functional>

namespace levylab {

/// Worker count used by parallel_for when `threads` is 0: the smaller of
/// hardware_concurrency and 16, overridable via the LEVYLAB_THREADS
/// environment variable.
unsigned default_thread_count();

/// Runs fn(i) for i in [0, n) on a small thread pool, contiguous chunks.
/// The callable must not share mutable state across indices; results must
/// be written to per-index slots so the outcome is independent of the
/// number of workers.
void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& fn,
                  unsigned threads = 0);

} // namespace levylab
