#ifndef ANNOPROJ_SRC_PARALLEL_H_
#define ANNOPROJ_SRC_PARALLEL_H_

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace annoproj {

// Calls fn(i) for every i in [0, n) on up to `workers` threads. The first
// exception thrown by any call is rethrown after all threads join.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t workers, Fn &&fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::jthread> threads;
  std::size_t count = std::min(workers, n);
  threads.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    threads.emplace_back([&]() {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  threads.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace annoproj

#endif  // ANNOPROJ_SRC_PARALLEL_H_
