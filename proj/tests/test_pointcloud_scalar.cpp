#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvekit/error.hpp"
#include "curvekit/pointcloud_scalar.hpp"
#include "fixtures.hpp"

using namespace curvekit;

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-15));
  CHECK(unit_ball_volume(4) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-14));
}

TEST_CASE("ball volume profile by counting") {
  const DistanceMatrix single(1, 0.0);
  const std::vector<double> radii{0.5, 1.0, 2.0};
  const BallVolumeProfile p = ball_volume_profile(single, 0, radii, 2);
  for (std::size_t i = 0; i < radii.size(); ++i)
    CHECK(p.ratios[i] == doctest::Approx(1.0 / (std::numbers::pi * radii[i] * radii[i])));

  const DistanceMatrix d = euclidean_distances(fixture::grid(50, 1.0));
  const std::size_t center = 25 * 50 + 25;
  const std::vector<double> grid_radii{6.0, 8.0, 10.0, 12.0};
  const BallVolumeProfile flat = ball_volume_profile(d, center, grid_radii, 2);
  for (double r : flat.ratios) CHECK(r * 2500.0 == doctest::Approx(1.0).epsilon(0.05));

  CHECK_THROWS_AS(ball_volume_profile(d, 0, std::vector<double>{}, 2), Error);
  CHECK_THROWS_AS(ball_volume_profile(d, 0, std::vector<double>{2.0, 1.0}, 2), Error);
}

TEST_CASE("sphere ratios shrink with radius") {
  const PointCloud s = fixture::sphere_sample(2000, 1.0, 3);
  const DistanceMatrix d = fixture::geodesic_sphere_distances(s, 1.0);
  const std::vector<double> radii{0.3, 0.6, 0.9, 1.2};
  std::vector<double> mean(radii.size(), 0.0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    const BallVolumeProfile p = ball_volume_profile(d, x, radii, 2);
    for (std::size_t i = 0; i < radii.size(); ++i) mean[i] += p.ratios[i] / static_cast<double>(d.size());
  }
  for (std::size_t i = 1; i < radii.size(); ++i) CHECK(mean[i] < mean[i - 1]);
}

TEST_CASE("quadratic fit recovers an exact curve") {
  BallVolumeProfile p;
  p.radii = {0.1, 0.2, 0.3, 0.4};
  for (double r : p.radii) p.ratios.push_back(3.0 - 0.5 * r * r);
  const QuadraticFit fit = fit_ball_ratios(p);
  CHECK(fit.c0 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.c1 == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("scalar estimate on flat and curved samples") {
  const DistanceMatrix d = euclidean_distances(fixture::grid(50, 1.0));
  const auto radii = default_radii(d, 25 * 50 + 25);
  CHECK(radii.size() == kDefaultRadiusCount);
  CHECK(std::is_sorted(radii.begin(), radii.end()));
  CHECK(std::abs(scalar_estimate(d, 25 * 50 + 25, radii, 2)) <= 0.1);

  const PointCloud s = fixture::sphere_sample(2000, 1.0, 4);
  const DistanceMatrix ds = fixture::geodesic_sphere_distances(s, 1.0);
  std::vector<double> estimates;
  for (std::size_t x = 0; x < 200; ++x) estimates.push_back(scalar_estimate(ds, x, std::vector<double>{0.3, 0.45, 0.6, 0.75, 0.9}, 2));
  std::nth_element(estimates.begin(), estimates.begin() + 100, estimates.end());
  CHECK(estimates[100] == doctest::Approx(2.0).epsilon(0.25));

  CHECK_THROWS_AS(scalar_estimate(d, 0, std::vector<double>{1.0, 2.0}, 2), Error);
}

TEST_CASE("scalar estimate scale law and relabeling") {
  const PointCloud s = fixture::sphere_sample(1500, 1.0, 5);
  const DistanceMatrix d = fixture::geodesic_sphere_distances(s, 1.0);
  const DistanceMatrix scaled = d.scaled(3.0);
  const std::vector<double> radii{0.3, 0.45, 0.6, 0.75, 0.9};
  std::vector<double> radii3;
  for (double r : radii) radii3.push_back(3.0 * r);
  for (std::size_t x = 0; x < 20; ++x) {
    const double a = scalar_estimate(d, x, radii, 2);
    const double b = scalar_estimate(scaled, x, radii3, 2);
    CHECK(b == doctest::Approx(a / 9.0).epsilon(0.05));
  }

  // Reverse the point order; estimates follow their points.
  const std::size_t n = d.size();
  DistanceMatrix rev(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rev(i, j) = d(n - 1 - i, n - 1 - j);
  for (std::size_t x = 0; x < 10; ++x)
    CHECK(scalar_estimate(rev, n - 1 - x, radii, 2) == doctest::Approx(scalar_estimate(d, x, radii, 2)).epsilon(1e-12));
}

TEST_CASE("per-point estimates flag degenerate fits") {
  const DistanceMatrix single(1, 0.0);
  const auto est = scalar_estimates(single, 2, std::vector<double>{});
  REQUIRE(est.size() == 1);
  CHECK(!est[0].has_value());
}
