#pragma once

#include <functional>

namespace hrl {

/// Worker count: HRL_THREADS if set and positive, else hardware concurrency.
int thread_budget();

/// Runs fn(0..n-1) on up to thread_budget() threads. Results must be written
/// to per-index slots so output order never depends on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hrl
