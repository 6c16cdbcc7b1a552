#pragma once

#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srp {

/// Reference trial loop. Kept alongside the OpenMP kernel so tests can
/// assert that worker count never changes a result.
template <class Fn>
void trial_map_serial(std::int64_t trials, Fn&& fn) {
  for (std::int64_t t = 0; t < trials; ++t) fn(t);
}

/// OpenMP trial loop. Each index is an independent unit of work writing
/// only to its own slots; the first exception (lowest trial index) is
/// rethrown after the loop joins.
template <class Fn>
void trial_map_parallel(std::int64_t trials, int threads, Fn&& fn) {
  std::exception_ptr first_error;
  std::int64_t first_error_index = std::numeric_limits<std::int64_t>::max();
  std::mutex error_mutex;

#ifdef _OPENMP
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t t = 0; t < trials; ++t) {
    try {
      fn(t);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (t < first_error_index) {
        first_error_index = t;
        first_error = std::current_exception();
      }
    }
  }
#else
  (void)threads;
  for (std::int64_t t = 0; t < trials; ++t) {
    try {
      fn(t);
    } catch (...) {
      if (t < first_error_index) {
        first_error_index = t;
        first_error = std::current_exception();
      }
    }
  }
#endif

  if (first_error) std::rethrow_exception(first_error);
}

/// threads == 1 takes the serial reference path; 0 means "let OpenMP
/// decide"; otherwise the requested worker count.
template <class Fn>
void trial_map(std::int64_t trials, int threads, Fn&& fn) {
  if (threads == 1)
    trial_map_serial(trials, std::forward<Fn>(fn));
  else
    trial_map_parallel(trials, threads, std::forward<Fn>(fn));
}

}  // namespace srp
