#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#ifdef MTEVAL_WITH_OPENMP
#include <omp.h>
#endif

namespace mteval {

// Selects how per-pair kernels run. kSerial is the reference path the
// parallel one is tested against; both produce bit-identical results because
// reductions always happen serially, in pair order, after the map step.
enum class Execution { kSerial, kParallel };

int max_threads();

// Applies fn(i) for i in [0, n) and returns the results in index order.
template <typename Fn>
auto map_indices(std::size_t n, Execution exec, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<Result> out(n);
  if (exec == Execution::kSerial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
#ifdef MTEVAL_WITH_OPENMP
  // Exceptions must not escape the parallel region; the one from the lowest
  // index is rethrown so failures match the serial path.
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
#else
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
#endif
  return out;
}

}  // namespace mteval
