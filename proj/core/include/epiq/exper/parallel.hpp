#pragma once

#include <cstddef>
#include <functional>

namespace epiq::exper {

/// Worker count used when a caller passes 0.
std::size_t default_workers();

/// Runs fn(0) .. fn(tasks - 1) on up to `workers` threads (0 = default).
/// Tasks are claimed from a shared counter, so callers must write results
/// by index to stay deterministic. The first exception thrown by any task
/// (lowest index) is rethrown after all threads join.
void parallel_for(std::size_t tasks, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace epiq::exper
