#ifndef PARAWEIGHT_PARALLEL_HPP
#define PARAWEIGHT_PARALLEL_HPP

#include <functional>

namespace paraweight {

/// Worker cap: PARAWEIGHT_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. Callers own all
/// result slots, so the reduction order (and hence the output) does not
/// depend on the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace paraweight

#endif
