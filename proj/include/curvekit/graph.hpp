#pragma once

// Weighted undirected graphs, their shortest-path metric and the punctured
// two-ball used by Bakry–Émery curvature.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace curvekit {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Edge {
  VertexId u;  // u < v
  VertexId v;
  double weight;

  VertexId other(VertexId w) const { return w == u ? v : u; }
};

struct Neighbor {
  VertexId vertex;
  EdgeId edge;
};

class Graph {
 public:
  Graph() = default;

  // Adds a vertex named `name`. Names must be unique.
  VertexId add_vertex(std::string name, double weight = 1.0);

  // Returns the id for `name`, creating the vertex when it is new.
  VertexId intern_vertex(std::string_view name);

  // Adds an undirected edge; rejects self-loops, duplicates and weights <= 0.
  EdgeId add_edge(VertexId a, VertexId b, double weight = 1.0);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  double vertex_weight(VertexId v) const { return vertex_weights_[v]; }
  void set_vertex_weight(VertexId v, double weight);

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  bool adjacent(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }

  std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

  // Same topology and vertex data with new edge weights (indexed by EdgeId).
  Graph with_edge_weights(std::span<const double> weights) const;

  // Same vertices, edges not listed in `removed` kept (EdgeIds are renumbered).
  Graph without_edges(std::span<const EdgeId> removed) const;

 private:
  static std::uint64_t pair_key(VertexId a, VertexId b);

  std::vector<std::string> names_;
  std::vector<double> vertex_weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::string, VertexId> index_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;
};

// Parses "u v [weight]" lines; '#' starts a comment. Vertices receive dense
// ids in order of first appearance.
Graph load_graph(std::string_view edge_list_text);

// Dense symmetric matrix with zero diagonal; +inf marks disconnected pairs.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size, double fill = kInfinity);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * size_, size_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * size_, size_}; }

  // Every entry multiplied by `factor`.
  DistanceMatrix scaled(double factor) const;

  // Throws unless square-symmetric with zero diagonal and no negative entry.
  void validate() const;

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

// Weighted shortest-path distances. Floyd–Warshall (vectorized row updates)
// for small graphs, one Dijkstra per source above that.
DistanceMatrix shortest_paths(const Graph& g);

// Dijkstra distances from one source.
std::vector<double> distances_from(const Graph& g, VertexId source);

// Breadth-first hop counts (edge weights ignored).
DistanceMatrix hop_distances(const Graph& g);
std::vector<double> hops_from(const Graph& g, VertexId source);

namespace detail {
inline constexpr std::size_t kFloydWarshallLimit = 512;
DistanceMatrix floyd_warshall(const Graph& g);
DistanceMatrix dijkstra_all(const Graph& g);
}  // namespace detail

struct PuncturedBall {
  std::vector<VertexId> sphere1;  // hop distance 1, ascending
  std::vector<VertexId> sphere2;  // hop distance 2, ascending
  // S1–S1 and S1–S2 edges; S2–S2 edges and edges at the center are omitted.
  std::vector<EdgeId> edges;
};

PuncturedBall punctured_two_ball(const Graph& g, VertexId center);

// Connected-component label for each vertex, labels numbered by smallest member.
std::vector<std::size_t> connected_components(const Graph& g);

}  // namespace curvekit
