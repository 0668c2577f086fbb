#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hslink {

/// Runs fn(index) for index in [0, count) across the given number of
/// threads. Callers write per-index results into preallocated storage and
/// reduce sequentially afterwards, so results do not depend on the thread
/// count. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(long count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = static_cast<int>(
      std::min<long>(threads, std::min<long>(count,
          std::max(1u, std::thread::hardware_concurrency()))));
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (long i = w; i < count; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hslink
