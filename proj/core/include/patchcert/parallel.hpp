#pragma once

#include <cstddef>
#include <functional>

namespace patchcert {

// Worker count: PATCHCERT_THREADS when set and nonzero, otherwise the
// hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Work items must be independent; results should
// be written to per-index slots so the outcome does not depend on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace patchcert
