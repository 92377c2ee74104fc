#ifndef SUMDIST_PARALLEL_HPP
#define SUMDIST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace sumdist {

// Worker count: SUMDIST_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
[[nodiscard]] unsigned worker_count();

// Calls body(i) for every i in [0, n), distributing contiguous index blocks
// over worker_count() threads. Each index is processed exactly once, so
// results written to per-index slots do not depend on the thread count.
// Calls made from inside a worker run serially on that worker.
// The first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sumdist

#endif  // SUMDIST_PARALLEL_HPP
