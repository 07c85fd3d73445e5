#pragma once

#include <cstddef>
#include <functional>

namespace lbpx {

/// Worker count for internal parallelism: hardware concurrency, capped by
/// the LBPX_THREADS environment variable when it holds a positive integer.
unsigned default_threads();

/// Runs body(begin, end) over contiguous chunks of [0, count) on up to
/// `threads` workers and joins them. The first exception thrown by any
/// chunk is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

} // namespace lbpx
