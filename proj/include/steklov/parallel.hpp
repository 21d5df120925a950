#pragma once

// Index-ordered parallel map over independent work items. Output slot i is
// written only by the iteration that computes item i, so results do not
// depend on the worker count or on scheduling.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steklov {

/// 0 means "let the runtime decide".
inline int resolve_workers(int workers) noexcept {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

/// Calls body(i) for every i in [0, count) on up to `workers` threads.
/// If any call throws, the exception from the lowest index is rethrown after
/// the loop finishes.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Serial counterpart of parallel_for, kept as the reference path.
template <class Body>
void serial_for(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace steklov
