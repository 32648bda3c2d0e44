#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hystbl {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Runs body(i) for i in [0, n). The parallel path requires independent
// writes per index; callers keep reductions out of the body so serial and
// parallel runs produce bitwise identical results.
template <class F>
void parallel_for(std::size_t n, bool parallel, F&& body) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace hystbl
