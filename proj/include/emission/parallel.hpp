#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace emission {

/// Worker count for parallel sweeps: EMISSION_THREADS if set, otherwise the
/// hardware concurrency. Throws ConfigError when the variable is set but is
/// not a positive integer.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Indices are
/// dealt out in contiguous blocks, so results written to slot i are assembled
/// in a fixed order. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace emission
