#pragma once

#include <atomic>
#include <functional>

namespace feec {

// Worker cap: explicit set_thread_count (CLI --threads) takes precedence,
// then the FEEC_THREADS environment variable, then hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [0, n) on up to thread_count() workers. fn must be
// safe to call concurrently for distinct i.
void parallel_for(int n, const std::function<void(int)>& fn);

// Instrumentation: number of global (mesh-coupled) linear solves performed.
// Local element/face/patch solves never increment this.
std::atomic<long>& global_solve_count();

} // namespace feec
