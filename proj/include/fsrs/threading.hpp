#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fsrs {

// Resolve the worker count: an explicit request wins, otherwise the
// FSRS_THREADS environment variable, otherwise the hardware concurrency.
// Returns at least 1.
std::size_t resolve_thread_count(int requested);

// Static partition of [0, n) across `workers` threads.  `body(begin, end)`
// runs on each chunk; chunks are disjoint so bodies may write to disjoint
// slices of shared output without synchronization.  Deterministic: the
// partition depends only on (n, workers), never on scheduling.
void parallel_chunks(std::size_t n, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fsrs
