#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tweetlex {

/// Execution lane. Every parallel kernel has a serial twin that produces
/// bit-identical output; tests compare the two lanes directly.
enum class Exec { serial, parallel };

/// Runs fn(i) for i in [0, n). Iterations must be independent.
template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// Deterministic map-reduce: [0, n) is cut into fixed chunks of chunk_size,
/// chunk_fn(begin, end) computes one partial per chunk, and partials fold in
/// chunk order. The decomposition does not depend on the thread count, so the
/// serial and parallel lanes agree bit-exactly even for float accumulations.
template <class T, class ChunkFn, class Fold>
T chunked_reduce(std::size_t n, std::size_t chunk_size, Exec exec,
                 ChunkFn&& chunk_fn, T init, Fold&& fold) {
  if (n == 0) return init;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<T> partials(n_chunks);
  for_each_index(n_chunks, exec, [&](std::size_t c) {
    const std::size_t begin = c * chunk_size;
    const std::size_t end = std::min(n, begin + chunk_size);
    partials[c] = chunk_fn(begin, end);
  });
  T acc = std::move(init);
  for (auto& p : partials) acc = fold(std::move(acc), std::move(p));
  return acc;
}

inline int max_threads() {
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

}  // namespace tweetlex
