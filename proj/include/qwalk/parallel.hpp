#pragma once

#include <cstddef>
#include <functional>

namespace qwalk {

/// Worker count: QWALK_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; callers write results into per-index slots so the
/// outcome is independent of scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qwalk
