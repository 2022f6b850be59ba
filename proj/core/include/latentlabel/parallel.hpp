#pragma once

#include <cstddef>
#include <functional>

namespace latentlabel {

// Worker cap: LATENTLABEL_THREADS if set (minimum 1), else the hardware
// concurrency.
std::size_t worker_limit();

// Runs body(0..jobs-1) across up to worker_limit() threads. Each index runs
// exactly once; the first exception is rethrown after all workers join.
// Results must be written to per-index slots so the outcome does not depend
// on scheduling.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace latentlabel
