#pragma once

#include <cstddef>
#include <functional>

namespace rieszwave {

/// Upper bound on worker threads used by line solves and refinement studies.
/// Zero means "hardware concurrency". Defaults to zero.
void set_max_workers(unsigned workers);
unsigned max_workers();

/// Runs body(i) for i in [0, count). Indices are split into contiguous
/// chunks, one per worker; each body call must write only its own slice of
/// any shared output. The first exception thrown by any worker is rethrown
/// after all workers join. Calls made from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rieszwave
