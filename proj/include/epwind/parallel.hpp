#pragma once

#include <cstddef>
#include <functional>

namespace epwind {

/// Worker threads to use: hardware concurrency, capped by EPWIND_THREADS.
std::size_t worker_count();

/// Calls body(i) for i in [0, count) across worker threads in contiguous
/// chunks. If any call throws, the exception from the lowest index is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace epwind
