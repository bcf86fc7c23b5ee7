#pragma once

#include <cstddef>
#include <functional>

namespace bcm {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; the first exception thrown is rethrown after all
/// workers finish. threads <= 1 runs inline, in order.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace bcm
