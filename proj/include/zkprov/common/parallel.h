#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zkprov {

inline size_t worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls fn(begin, end) over disjoint ranges covering [0, n). Runs inline when
// only one worker is available. The first exception is rethrown.
template <class Fn>
void parallel_for(size_t n, Fn&& fn, size_t min_grain = 1) {
  size_t workers = std::min(worker_count(), std::max<size_t>(1, n / std::max<size_t>(min_grain, 1)));
  if (workers <= 1) {
    if (n > 0) fn(size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex mu;
  size_t step = (n + workers - 1) / workers;
  for (size_t begin = 0; begin < n; begin += step) {
    size_t end = std::min(n, begin + step);
    threads.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace zkprov
