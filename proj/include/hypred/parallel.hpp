#pragma once

#include <cstddef>
#include <functional>

namespace hypred {

/// Worker count for parallel searches: HW_THREADS if set to a positive
/// integer, otherwise std::thread::hardware_concurrency() (at least 1).
unsigned default_workers();

/// Runs body(worker_index) on `workers` threads and joins them. With one
/// worker the body runs on the calling thread.
void run_workers(unsigned workers, const std::function<void(unsigned)>& body);

/// Half-open slice [begin, end) of `count` items owned by `worker` out of `workers`.
struct Slice {
  std::size_t begin;
  std::size_t end;
};
Slice slice_for(std::size_t count, unsigned worker, unsigned workers);

}  // namespace hypred
