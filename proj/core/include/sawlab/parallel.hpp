#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sawlab {

/// Worker count from SAWLAB_THREADS, falling back to hardware concurrency.
unsigned default_parallelism();

/// Runs fn(i) for i in [0, n_tasks). Tasks are claimed dynamically; the
/// first exception thrown by any task is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t n_tasks, Fn&& fn,
                  unsigned threads = default_parallelism()) {
  if (n_tasks == 0) return;
  if (threads <= 1 || n_tasks == 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_tasks);
        return;
      }
    }
  };
  const unsigned n = static_cast<unsigned>(
      std::min<std::size_t>(threads, n_tasks));
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sawlab
