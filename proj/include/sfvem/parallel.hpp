#pragma once

#include <functional>

namespace sfvem {

/// Worker count: hardware concurrency, capped by SFVEM_THREADS when set.
int worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. fn must only
/// write to per-index storage. If calls throw, the exception from the
/// smallest index is rethrown after all workers stop.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace sfvem
