#pragma once

#include <cstddef>
#include <functional>

namespace jatecs {

// Worker count used by parallel_for. Defaults to the hardware concurrency.
// Zero restores the default.
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs body(i) for i in [0, n). Callers write results into slot i of a
// pre-sized container, so reductions happen afterwards in index order and
// the outcome does not depend on scheduling. The first exception thrown by
// any body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace jatecs
