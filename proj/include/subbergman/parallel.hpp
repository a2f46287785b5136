#pragma once

#include <cstddef>
#include <functional>

namespace subbergman {

/// Worker count: SUBBERGMAN_THREADS when set to a positive integer,
/// otherwise one worker per available core.
int worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace subbergman
