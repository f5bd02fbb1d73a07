#pragma once

// Data-parallel inner loops shared by the distance and ball-volume code.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant compiled in its own translation unit. The variant used at run time
// is picked once from CPU features; CURVEKIT_SIMD=scalar forces the
// reference path. The vector variants reproduce the scalar results bit for
// bit (no FMA contraction, identical per-lane operation order).

#include <cstddef>
#include <span>
#include <string_view>

namespace curvekit::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  // row[j] = min(row[j], pivot + through[j]); one Floyd–Warshall row update.
  void (*min_plus_row)(std::span<double> row, std::span<const double> through, double pivot);

  // out[j] = sum_k (point[k] - points[j * dim + k])^2 for j < out.size().
  void (*squared_distances)(std::span<const double> point, std::span<const double> points,
                            std::span<double> out);

  // Number of entries with value <= threshold.
  std::size_t (*count_at_most)(std::span<const double> values, double threshold);
};

const KernelTable& scalar_kernels();

// nullptr when the CPU (or the build) has no AVX2.
const KernelTable* avx2_kernels();

// Table selected for this process.
const KernelTable& kernels();

}  // namespace curvekit::simd
