#if defined(__x86_64__)
#ifndef __AVX2__
#error "this should be compiled with AVX2"
#endif
#endif

#include <immintrin.h>

#include <algorithm>

#include "curvekit/simd/kernels.hpp"

namespace curvekit::simd {
namespace {

void min_plus_row_avx2(std::span<double> row, std::span<const double> through, double pivot) {
  const std::size_t n = row.size();
  const __m256d p = _mm256_set1_pd(pivot);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d cand = _mm256_add_pd(p, _mm256_loadu_pd(through.data() + j));
    const __m256d cur = _mm256_loadu_pd(row.data() + j);
    // _mm256_min_pd(a, b) returns b when a == b; values are equal so it is moot.
    _mm256_storeu_pd(row.data() + j, _mm256_min_pd(cur, cand));
  }
  for (; j < n; ++j) row[j] = std::min(row[j], pivot + through[j]);
}

// Four target points per iteration, coordinates accumulated in the same
// order as the scalar loop so every lane matches it exactly.
void squared_distances_avx2(std::span<const double> point, std::span<const double> points,
                            std::span<double> out) {
  const std::size_t dim = point.size();
  const std::size_t count = out.size();
  const double* base = points.data();
  std::size_t j = 0;
  if (dim > 0) {
    const __m256i stride =
        _mm256_set_epi64x(static_cast<long long>(3 * dim), static_cast<long long>(2 * dim),
                          static_cast<long long>(dim), 0);
    for (; j + 4 <= count; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      const double* block = base + j * dim;
      for (std::size_t k = 0; k < dim; ++k) {
        const __m256d q = _mm256_i64gather_pd(block + k, stride, 8);
        const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(point[k]), q);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
      }
      _mm256_storeu_pd(out.data() + j, acc);
    }
  }
  for (; j < count; ++j) {
    const double* q = base + j * dim;
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = point[k] - q[k];
      const double sq = diff * diff;
      acc = acc + sq;
    }
    out[j] = acc;
  }
}

std::size_t count_at_most_avx2(std::span<const double> values, double threshold) {
  const std::size_t n = values.size();
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_loadu_pd(values.data() + j);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, t, _CMP_LE_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; j < n; ++j) count += (values[j] <= threshold) ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::Avx2, &min_plus_row_avx2, &squared_distances_avx2,
                                 &count_at_most_avx2};
  return table;
}

}  // namespace curvekit::simd
