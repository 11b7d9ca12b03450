#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace symchaos {

/// How verifier kernels run. `serial` is the reference path the parallel
/// one is tested against.
enum class Execution : std::uint8_t { serial, parallel };

/// body(i) for i in [0, n). Under `parallel` iterations run on OpenMP
/// threads; the first exception thrown by any iteration is rethrown after
/// the loop. Bodies must only write to per-index state.
template <class Body>
void for_each_index(Execution exec, std::size_t n, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace symchaos
