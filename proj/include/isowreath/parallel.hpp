#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace isowreath {

enum class Exec { Serial, Parallel };

// Thread count for parallel kernels; ISOWREATH_THREADS caps it when set.
int worker_threads();

// Runs body(k) for k in [0, n). Parallel runs use a static schedule, so every
// index is computed by exactly the same code as in the serial run. The
// exception of the lowest failing index is rethrown after the loop.
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

} // namespace isowreath
