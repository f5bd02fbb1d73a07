#pragma once

// Point clouds, their Euclidean distance matrix, and the ε-neighborhood graph.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "curvekit/graph.hpp"

namespace curvekit {

// Row-major coordinates, `dim` values per point.
struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

// CSV with one point per row (',' or whitespace separated, '#' comments).
PointCloud parse_point_csv(std::string_view text);

// Square CSV distance matrix; validated for symmetry and zero diagonal.
DistanceMatrix parse_distance_csv(std::string_view text);

DistanceMatrix euclidean_distances(const PointCloud& cloud);

// Vertex per point (named by row index); edge (i, j) iff 0 < d(i, j) <= eps,
// weighted by d(i, j).
Graph epsilon_graph(const DistanceMatrix& d, double eps);
Graph epsilon_graph(const PointCloud& cloud, double eps);

}  // namespace curvekit
