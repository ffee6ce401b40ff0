#pragma once

#include <cstddef>
#include <functional>

namespace maxac {

/// Worker count: MAXAC_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Calls body(i) for i in [0, n). Each index is visited once; results must be
/// written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace maxac
