#pragma once

// Scalar curvature of a sampled manifold from geodesic-ball volume growth:
// vol(B(x, r)) / (v_n rⁿ) ≈ c0 (1 - S(x) r² / (6(n + 2))), fitted per point.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "curvekit/graph.hpp"

namespace curvekit {

struct BallVolumeProfile {
  std::size_t center = 0;
  std::vector<double> radii;   // strictly increasing
  std::vector<double> ratios;  // count(d(x, ·) <= r) / (N v_n rⁿ)
  int dimension = 0;
};

// Volume of the Euclidean unit n-ball.
double unit_ball_volume(int n);

BallVolumeProfile ball_volume_profile(const DistanceMatrix& d, std::size_t x,
                                      std::span<const double> radii, int n);

inline constexpr std::size_t kDefaultRadiusCount = 8;
inline constexpr double kDefaultLowQuantile = 0.05;
inline constexpr double kDefaultHighQuantile = 0.25;

// Geometric grid between the 5th and 25th percentile of distances from x.
std::vector<double> default_radii(const DistanceMatrix& d, std::size_t x,
                                  std::size_t count = kDefaultRadiusCount);

struct QuadraticFit {
  double c0;
  double c1;
};

// Least squares ratio ≈ c0 + c1 r².
QuadraticFit fit_ball_ratios(const BallVolumeProfile& profile);

// -6 (n + 2) c1 / c0. Needs at least 3 radii; throws on a degenerate fit.
double scalar_estimate(const DistanceMatrix& d, std::size_t x, std::span<const double> radii, int n);

// Per-point estimates; a point whose fit degenerates yields nullopt. Empty
// `radii` selects default_radii per point.
std::vector<std::optional<double>> scalar_estimates(const DistanceMatrix& d, int n,
                                                    std::span<const double> radii);

}  // namespace curvekit
