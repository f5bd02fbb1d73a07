#include "curvekit/pointcloud_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvekit/error.hpp"
#include "curvekit/parallel.hpp"
#include "curvekit/simd/kernels.hpp"

namespace curvekit {

double unit_ball_volume(int n) {
  const double half = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

BallVolumeProfile ball_volume_profile(const DistanceMatrix& d, std::size_t x,
                                      std::span<const double> radii, int n) {
  if (radii.empty()) fail(ErrorKind::Infeasible, "empty radius grid");
  if (n < 1) fail(ErrorKind::Infeasible, "intrinsic dimension must be at least 1");
  if (x >= d.size()) fail(ErrorKind::Infeasible, "point index out of range");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) fail(ErrorKind::Infeasible, "radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      fail(ErrorKind::Infeasible, "radii must be strictly increasing");
  }
  BallVolumeProfile profile;
  profile.center = x;
  profile.dimension = n;
  profile.radii.assign(radii.begin(), radii.end());
  const double total = static_cast<double>(d.size());
  const double vn = unit_ball_volume(n);
  const auto& k = simd::kernels();
  for (double r : radii) {
    const auto inside = static_cast<double>(k.count_at_most(d.row(x), r));
    profile.ratios.push_back(inside / (total * vn * std::pow(r, n)));
  }
  return profile;
}

std::vector<double> default_radii(const DistanceMatrix& d, std::size_t x, std::size_t count) {
  std::vector<double> dist;
  for (std::size_t j = 0; j < d.size(); ++j)
    if (j != x && std::isfinite(d(x, j)) && d(x, j) > 0.0) dist.push_back(d(x, j));
  if (dist.size() < 2 || count < 3) fail(ErrorKind::Infeasible, "too few points for a radius grid");
  std::sort(dist.begin(), dist.end());
  auto quantile = [&](double q) {
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(dist.size())));
    return dist[std::clamp<std::size_t>(rank, 1, dist.size()) - 1];
  };
  const double lo = quantile(kDefaultLowQuantile);
  const double hi = quantile(kDefaultHighQuantile);
  if (!(hi > lo)) fail(ErrorKind::Infeasible, "distance quantiles coincide; no radius grid");
  std::vector<double> radii(count);
  const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(count - 1));
  for (std::size_t i = 0; i < count; ++i) radii[i] = lo * std::pow(ratio, static_cast<double>(i));
  radii.back() = hi;
  return radii;
}

QuadraticFit fit_ball_ratios(const BallVolumeProfile& profile) {
  const std::size_t m = profile.radii.size();
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    t_mean += profile.radii[i] * profile.radii[i];
    y_mean += profile.ratios[i];
  }
  t_mean /= static_cast<double>(m);
  y_mean /= static_cast<double>(m);
  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = profile.radii[i] * profile.radii[i] - t_mean;
    stt += t * t;
    sty += t * (profile.ratios[i] - y_mean);
  }
  if (!(stt > 0.0)) fail(ErrorKind::Numerical, "singular ball-volume fit");
  const double c1 = sty / stt;
  return {y_mean - c1 * t_mean, c1};
}

double scalar_estimate(const DistanceMatrix& d, std::size_t x, std::span<const double> radii, int n) {
  if (radii.size() < 3) fail(ErrorKind::Infeasible, "scalar estimate needs at least 3 radii");
  const BallVolumeProfile profile = ball_volume_profile(d, x, radii, n);
  const QuadraticFit fit = fit_ball_ratios(profile);
  if (!(fit.c0 > 0.0)) fail(ErrorKind::Numerical, "degenerate ball-volume fit (c0 <= 0)");
  return -6.0 * (static_cast<double>(n) + 2.0) * fit.c1 / fit.c0;
}

std::vector<std::optional<double>> scalar_estimates(const DistanceMatrix& d, int n,
                                                    std::span<const double> radii) {
  std::vector<std::optional<double>> out(d.size());
  parallel_for(d.size(), [&](std::size_t x) {
    try {
      if (radii.empty()) {
        const auto grid = default_radii(d, x);
        out[x] = scalar_estimate(d, x, grid, n);
      } else {
        out[x] = scalar_estimate(d, x, radii, n);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Infeasible && !radii.empty()) throw;
      out[x] = std::nullopt;
    }
  });
  return out;
}

}  // namespace curvekit
