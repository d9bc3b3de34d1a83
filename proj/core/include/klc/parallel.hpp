#pragma once

#include <cstddef>
#include <functional>

namespace klc {

/// Runs body(i) for i in [0, n) on up to `jobs` threads (0 = hardware
/// concurrency). Results must go to pre-sized per-index slots so that the
/// outcome does not depend on scheduling. If several iterations throw, the
/// exception of the smallest index is rethrown.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace klc
