#pragma once

#include <cstddef>
#include <functional>

namespace icts::parallel {

// Worker cap from ICTS_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

// Runs fn(i) for i in [0, n). Work items must be independent; each item owns
// its output slot, so results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace icts::parallel
