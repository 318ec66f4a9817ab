#include "hypred/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hypred {

unsigned default_workers() {
  if (const char* env = std::getenv("HW_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void run_workers(unsigned workers, const std::function<void(unsigned)>& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          body(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Slice slice_for(std::size_t count, unsigned worker, unsigned workers) {
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  const std::size_t begin = worker * base + std::min<std::size_t>(worker, extra);
  return {begin, begin + base + (worker < extra ? 1 : 0)};
}

}  // namespace hypred
