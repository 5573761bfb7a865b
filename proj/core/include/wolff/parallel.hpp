#pragma once

#include <cstddef>
#include <functional>

namespace wolff {

/// Worker cap: min(hardware_concurrency, WOLFF_TRACE_THREADS). Reads the
/// environment once.
int max_threads();

/// Runs body(i) for i in [0, count). Each index writes only its own output
/// slot, so results are identical for any thread count. Exceptions from the
/// body are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

} // namespace wolff
