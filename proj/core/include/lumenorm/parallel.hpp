#pragma once

#include <cstddef>
#include <functional>

namespace lumenorm {

/// Number of workers used for batch image work: hardware concurrency capped
/// by the LUMENORM_THREADS environment variable (minimum 1).
int worker_count(std::size_t jobs);

/// Run body(0) .. body(count-1), possibly concurrently. Each index is
/// processed exactly once; the first exception thrown by any body is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lumenorm
