#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace hpchain {

enum class Exec { kSerial, kParallel };

void set_thread_count(int threads);
int thread_count();

// Calls fn(i) for i in [0, n). Results must be written to per-index slots so
// that any later reduction runs in a fixed order. Nested calls run serially.
template <class Fn>
void for_each_index(Exec exec, std::size_t n, Fn&& fn) {
  if (exec == Exec::kSerial || n < 2 || omp_in_parallel()) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hpchain
