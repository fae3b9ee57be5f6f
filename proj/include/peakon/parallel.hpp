#ifndef PEAKON_PARALLEL_HPP_
#define PEAKON_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace peakon {

/// Worker count: PEAKON_LAB_THREADS if set to a positive integer, else the
/// hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads, in
/// contiguous blocks. The first exception thrown by any worker is rethrown.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace peakon

#endif  // PEAKON_PARALLEL_HPP_
