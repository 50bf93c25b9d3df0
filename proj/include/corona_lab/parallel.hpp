#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif

namespace corona {

// Pairwise (tree) reduction over a buffer. The association order depends only
// on the buffer length, never on the thread count, so sums are bit-identical
// across runs and across OMP_NUM_THREADS settings.
template <class T>
T pairwise_sum(const T* data, std::size_t count) {
  if (count == 0) return T{};
  if (count <= 8) {
    T s = data[0];
    for (std::size_t i = 1; i < count; ++i) s += data[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Parallel kernel evaluation: terms are computed into a buffer with a static
// schedule, then tree-reduced. term(i) must be pure.
template <class T, class F>
T map_reduce(std::size_t count, F&& term) {
  std::vector<T> buf(count);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(count); ++i)
    buf[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));
  return pairwise_sum(buf);
}

// Serial reference for the above, kept for tests and benchmarks. Plain
// left-to-right accumulation; may differ from map_reduce in the last bits.
template <class T, class F>
T map_reduce_serial(std::size_t count, F&& term) {
  T s{};
  for (std::size_t i = 0; i < count; ++i) s += term(i);
  return s;
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(count); ++i)
    body(static_cast<std::size_t>(i));
}

}  // namespace corona
