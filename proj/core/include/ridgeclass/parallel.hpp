#pragma once

#include <cstddef>
#include <functional>

namespace ridgeclass {

/// Worker count: RIDGECLASS_THREADS when set to a positive integer, otherwise
/// (unset, 0 or unparsable) std::thread::hardware_concurrency().
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = thread_count()).
/// Work is claimed by index, so results written to slot i are deterministic.
/// If any call throws, the exception from the lowest failing index is rethrown
/// after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace ridgeclass
