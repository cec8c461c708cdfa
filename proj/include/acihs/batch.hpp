#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#include <omp.h>

// Independent-trial batches. Every trial writes only its own slot, so the
// OpenMP version returns exactly what the serial one does.
namespace acihs::batch {

/// Reference implementation: trials in index order on the calling thread.
template <class Fn>
auto run_serial(std::size_t n, Fn&& trial) -> std::vector<decltype(trial(std::size_t{}))> {
  std::vector<decltype(trial(std::size_t{}))> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(trial(i));
  return out;
}

/// Trials spread over `threads` OpenMP threads (<= 0: OpenMP default).
/// The exception of the lowest failing trial index is rethrown.
template <class Fn>
auto run_parallel(std::size_t n, Fn&& trial, int threads = 0) -> std::vector<decltype(trial(std::size_t{}))> {
  using R = decltype(trial(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = trial(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// run_serial for threads == 1, run_parallel otherwise.
template <class Fn>
auto run(std::size_t n, Fn&& trial, int threads) -> std::vector<decltype(trial(std::size_t{}))> {
  if (threads == 1) return run_serial(n, std::forward<Fn>(trial));
  return run_parallel(n, std::forward<Fn>(trial), threads);
}

}  // namespace acihs::batch
