#pragma once

#include <cstddef>
#include <functional>

namespace teamcov {

/// Upper bound on worker threads used inside the library; 0 means one per
/// hardware thread. Defaults to 1.
void set_max_threads(unsigned count);
unsigned max_threads();

/// Runs fn(0) ... fn(n-1), possibly concurrently. Each index is handled by
/// exactly one call, so writing results into slot i keeps output independent
/// of scheduling. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace teamcov
