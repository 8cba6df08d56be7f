#include "scg/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scg {

namespace {
int g_default_workers = 0;
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) {
#ifdef _OPENMP
  if (g_default_workers == 0) g_default_workers = omp_get_max_threads();
  omp_set_num_threads(n >= 1 ? n : g_default_workers);
#else
  (void)n;
#endif
}

int configure_threads_from_env() {
  const char* env = std::getenv("SCG_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  int n = 0;
  try {
    n = std::stoi(env);
  } catch (const std::exception&) {
    return 0;
  }
  if (n < 1) return 0;
  set_worker_count(n);
  return n;
}

namespace detail {

void parallel_for_impl(std::int64_t n, void (*body)(std::int64_t, void*), void* ctx) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) body(i, ctx);
#else
  for (std::int64_t i = 0; i < n; ++i) body(i, ctx);
#endif
}

}  // namespace detail

}  // namespace scg
