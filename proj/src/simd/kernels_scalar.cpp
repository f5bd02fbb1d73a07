#include "curvekit/simd/kernels.hpp"

#include <algorithm>

namespace curvekit::simd {
namespace {

void min_plus_row_scalar(std::span<double> row, std::span<const double> through, double pivot) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double candidate = pivot + through[j];
    row[j] = std::min(row[j], candidate);
  }
}

void squared_distances_scalar(std::span<const double> point, std::span<const double> points,
                              std::span<double> out) {
  const std::size_t dim = point.size();
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double* q = points.data() + j * dim;
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = point[k] - q[k];
      const double sq = diff * diff;
      acc = acc + sq;
    }
    out[j] = acc;
  }
}

std::size_t count_at_most_scalar(std::span<const double> values, double threshold) {
  std::size_t count = 0;
  for (double v : values) count += (v <= threshold) ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, &min_plus_row_scalar, &squared_distances_scalar,
                                 &count_at_most_scalar};
  return table;
}

}  // namespace curvekit::simd
