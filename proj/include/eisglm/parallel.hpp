#ifndef EISGLM_PARALLEL_HPP
#define EISGLM_PARALLEL_HPP

#include <functional>

namespace eisglm {

/// Worker count from EISGLM_THREADS (0 or 1 means serial, unset means
/// hardware concurrency capped at 8).
int thread_count();

/// Runs fn(i) for i in [0, n). Iterations must write disjoint state; chunks
/// are assigned deterministically so results never depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace eisglm

#endif
