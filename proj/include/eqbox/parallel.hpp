#pragma once

#include <cstddef>
#include <functional>

namespace eqbox {

/// Worker count: EQBOX_THREADS if set (>= 1), else the hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index runs exactly once; callers write
/// results into per-index slots and reduce afterwards in index order, which
/// keeps outputs independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace eqbox
