#pragma once

// Worked-example inputs shared by the unit and acceptance tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curvekit/complex.hpp"
#include "curvekit/graph.hpp"
#include "curvekit/pointcloud.hpp"

namespace curvekit::fixture {

// Two filled triangular bipyramids (two tetrahedra each) joined by a strip of
// five triangles f1..f5. f1 and f5 each sit on an equatorial edge that
// already bounds three triangles.
struct StripComplex {
  Graph names;
  SimplicialComplex complex;
  std::array<Simplex, 5> strip;
};

inline const char* strip_complex_text() {
  return "a1 x y z\n"
         "a2 x y z\n"
         "b1 s u t\n"
         "b2 s u t\n"
         "x y p\n"
         "y p q\n"
         "p q r\n"
         "q r s\n"
         "r s u\n";
}

inline StripComplex strip_complex() {
  StripComplex out;
  std::vector<Simplex> rows;
  std::string text = strip_complex_text();
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string line = text.substr(start, end - start);
    start = end + 1;
    Simplex s;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const std::size_t space = line.find(' ', pos);
      const std::string name = line.substr(pos, space == std::string::npos ? std::string::npos : space - pos);
      s.push_back(out.names.intern_vertex(name));
      if (space == std::string::npos) break;
      pos = space + 1;
    }
    std::sort(s.begin(), s.end());
    rows.push_back(s);
  }
  out.complex = SimplicialComplex(out.names.vertex_count());
  for (const auto& s : rows) out.complex.add_simplex(s);
  for (std::size_t i = 0; i < 5; ++i) out.strip[i] = rows[4 + i];
  return out;
}

// Triangle a-b-c with a pendant d attached at c.
inline Graph triangle_with_pendant() { return load_graph("a b\nb c\nc a\nc d\n"); }

// Uniform sample of the sphere of the given radius in R^3.
inline PointCloud sphere_sample(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  PointCloud cloud{3, {}};
  cloud.coords.reserve(3 * count);
  while (cloud.size() < count) {
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < 1e-12) continue;
    cloud.coords.insert(cloud.coords.end(), {radius * x / norm, radius * y / norm, radius * z / norm});
  }
  return cloud;
}

// Great-circle distances between points on a sphere centered at the origin.
inline DistanceMatrix geodesic_sphere_distances(const PointCloud& cloud, double radius) {
  DistanceMatrix d(cloud.size(), 0.0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < 3; ++k) dot += cloud.point(i)[k] * cloud.point(j)[k];
      const double c = std::clamp(dot / (radius * radius), -1.0, 1.0);
      d(i, j) = d(j, i) = radius * std::acos(c);
    }
  }
  return d;
}

inline PointCloud grid(std::size_t side, double spacing) {
  PointCloud cloud{2, {}};
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j)
      cloud.coords.insert(cloud.coords.end(), {spacing * static_cast<double>(i), spacing * static_cast<double>(j)});
  return cloud;
}

}  // namespace curvekit::fixture
