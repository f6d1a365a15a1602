#pragma once

#include <cstddef>
#include <functional>

namespace recbench {

/// Process-wide worker count used by parallel_for. 0 resets to the hardware
/// concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n) over contiguous chunks, one chunk per worker.
/// Each index is visited exactly once; callers write results into
/// index-addressed slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace recbench

namespace recbench {

/// Like parallel_for but hands each worker its whole [begin, end) range, so
/// per-worker scratch buffers can be allocated once.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace recbench
