#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include "spca/execution.h"

namespace spca::detail {

// Runs body(i) for i in [0, count). Iterations must write disjoint state.
// The first exception thrown by any iteration is rethrown on the caller.
template <typename Body>
void for_each_index(std::size_t count, Execution execution, Body&& body) {
  if (execution == Execution::kSerial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace spca::detail
