#pragma once

// Data-parallel loops with a serial reference path.
//
// Every kernel in the library takes an ExecPolicy. `serial` is the reference
// implementation used by the tests; `parallel` distributes the same index
// space over OpenMP threads. Results are written per index and reduced in
// index order afterwards, so both paths produce bit-identical output for any
// thread count.

#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <vector>

namespace scg {

enum class ExecPolicy { serial, parallel };

/// Worker count used by `parallel` loops.
int worker_count();
/// Caps the worker count; values < 1 restore the OpenMP default.
void set_worker_count(int n);
/// Applies SCG_THREADS from the environment, if set. Returns the value applied (0 if unset).
int configure_threads_from_env();

namespace detail {
void parallel_for_impl(std::int64_t n, void (*body)(std::int64_t, void*), void* ctx);
}

/// Calls fn(i) for i in [0, n). Iterations must be independent.
template <class Fn>
void for_each_index(ExecPolicy policy, std::int64_t n, Fn&& fn) {
  if (policy == ExecPolicy::serial || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  // Exceptions must not escape an OpenMP region; keep the one from the lowest index.
  struct Ctx {
    Fn* fn;
    std::exception_ptr error;
    std::int64_t error_index;
    std::mutex mu;
  } ctx{&fn, nullptr, n, {}};
  auto thunk = [](std::int64_t i, void* raw) {
    auto* c = static_cast<Ctx*>(raw);
    try {
      (*c->fn)(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(c->mu);
      if (i < c->error_index) {
        c->error_index = i;
        c->error = std::current_exception();
      }
    }
  };
  detail::parallel_for_impl(n, thunk, &ctx);
  if (ctx.error) std::rethrow_exception(ctx.error);
}

/// Evaluates fn(i) for every index and returns the results in index order.
template <class T, class Fn>
std::vector<T> map_indices(ExecPolicy policy, std::int64_t n, Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  for_each_index(policy, n, [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = fn(i); });
  return out;
}

/// Index of the smallest value; ties go to `tie_less`, then to the lower index.
template <class T, class Less, class TieLess>
std::optional<std::size_t> argmin(const std::vector<T>& values, Less less, TieLess tie_less) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!best) {
      best = i;
      continue;
    }
    const T& a = values[i];
    const T& b = values[*best];
    if (less(a, b) || (!less(b, a) && tie_less(a, b))) best = i;
  }
  return best;
}

}  // namespace scg
