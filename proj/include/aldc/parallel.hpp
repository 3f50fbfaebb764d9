#pragma once

#include <cstddef>
#include <functional>

namespace aldc {

/// Worker cap from ALDC_THREADS (0 or unset = hardware concurrency).
int thread_budget();

/// Runs fn(0..count-1) on up to thread_budget() threads. Each index is
/// processed exactly once; callers own any ordering of side effects, so
/// deterministic use means writing to per-index slots only.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace aldc
