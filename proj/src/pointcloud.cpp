#include "curvekit/pointcloud.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "curvekit/error.hpp"
#include "curvekit/parallel.hpp"
#include "curvekit/simd/kernels.hpp"

namespace curvekit {
namespace {

std::vector<std::vector<double>> parse_numeric_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<double> row;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
    while (i < line.size()) {
      while (i < line.size() && is_sep(line[i])) ++i;
      const std::size_t start = i;
      while (i < line.size() && !is_sep(line[i])) ++i;
      if (i == start) continue;
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + i, value);
      if (ec != std::errc{} || ptr != line.data() + i || !std::isfinite(value))
        fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad number '" +
                                   std::string(line.substr(start, i - start)) + "'");
      row.push_back(value);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

PointCloud parse_point_csv(std::string_view text) {
  const auto rows = parse_numeric_rows(text);
  PointCloud cloud;
  if (rows.empty()) return cloud;
  cloud.dim = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cloud.dim)
      fail(ErrorKind::Parse, "row " + std::to_string(r + 1) + ": inconsistent dimension");
    cloud.coords.insert(cloud.coords.end(), rows[r].begin(), rows[r].end());
  }
  return cloud;
}

DistanceMatrix parse_distance_csv(std::string_view text) {
  const auto rows = parse_numeric_rows(text);
  DistanceMatrix d(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) fail(ErrorKind::Parse, "distance matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) d(i, j) = rows[i][j];
  }
  try {
    d.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
  return d;
}

DistanceMatrix euclidean_distances(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  DistanceMatrix d(n);
  const auto& k = simd::kernels();
  parallel_for(n, [&](std::size_t i) {
    auto row = d.row(i);
    k.squared_distances(cloud.point(i), cloud.coords, row);
    for (double& x : row) x = std::sqrt(x);
    row[i] = 0.0;
  });
  return d;
}

Graph epsilon_graph(const DistanceMatrix& d, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::Infeasible, "eps must be positive");
  Graph g;
  for (std::size_t i = 0; i < d.size(); ++i) g.add_vertex(std::to_string(i));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double dist = d(i, j);
      if (dist > 0.0 && dist <= eps)
        g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j), dist);
    }
  }
  return g;
}

Graph epsilon_graph(const PointCloud& cloud, double eps) {
  return epsilon_graph(euclidean_distances(cloud), eps);
}

}  // namespace curvekit
