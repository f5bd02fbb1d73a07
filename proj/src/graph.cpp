#include "curvekit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "curvekit/error.hpp"
#include "curvekit/parallel.hpp"
#include "curvekit/simd/kernels.hpp"

namespace curvekit {

VertexId Graph::add_vertex(std::string name, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight))
    fail(ErrorKind::Infeasible, "vertex weight must be positive: " + name);
  if (index_.contains(name)) fail(ErrorKind::Infeasible, "duplicate vertex: " + name);
  const auto id = static_cast<VertexId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  vertex_weights_.push_back(weight);
  adjacency_.emplace_back();
  return id;
}

VertexId Graph::intern_vertex(std::string_view name) {
  if (auto found = find_vertex(name)) return *found;
  return add_vertex(std::string(name));
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Graph::set_vertex_weight(VertexId v, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight))
    fail(ErrorKind::Infeasible, "vertex weight must be positive: " + names_[v]);
  vertex_weights_[v] = weight;
}

std::uint64_t Graph::pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

EdgeId Graph::add_edge(VertexId a, VertexId b, double weight) {
  if (a >= vertex_count() || b >= vertex_count()) fail(ErrorKind::Infeasible, "unknown vertex");
  if (a == b) fail(ErrorKind::Infeasible, "self-loop at " + names_[a]);
  if (!(weight > 0.0) || !std::isfinite(weight))
    fail(ErrorKind::Infeasible, "nonpositive weight on " + names_[a] + "-" + names_[b]);
  const std::uint64_t key = pair_key(a, b);
  if (edge_index_.contains(key))
    fail(ErrorKind::Infeasible, "duplicate edge " + names_[a] + "-" + names_[b]);
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{std::min(a, b), std::max(a, b), weight});
  edge_index_.emplace(key, id);
  adjacency_[a].push_back({b, id});
  adjacency_[b].push_back({a, id});
  return id;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
  auto it = edge_index_.find(pair_key(a, b));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::with_edge_weights(std::span<const double> weights) const {
  if (weights.size() != edges_.size()) fail(ErrorKind::Infeasible, "edge weight count mismatch");
  Graph out = *this;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!(weights[e] > 0.0) || !std::isfinite(weights[e]))
      fail(ErrorKind::Numerical, "edge weight must stay positive");
    out.edges_[e].weight = weights[e];
  }
  return out;
}

Graph Graph::without_edges(std::span<const EdgeId> removed) const {
  std::unordered_set<EdgeId> drop(removed.begin(), removed.end());
  Graph out;
  for (std::size_t v = 0; v < names_.size(); ++v) out.add_vertex(names_[v], vertex_weights_[v]);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (drop.contains(static_cast<EdgeId>(e))) continue;
    out.add_edge(edges_[e].u, edges_[e].v, edges_[e].weight);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double parse_real(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad number '" +
                               std::string(text) + "'");
  return value;
}

}  // namespace

Graph load_graph(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 2 || fields.size() > 3)
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 'u v [weight]'");
    const double weight = fields.size() == 3 ? parse_real(fields[2], line_no) : 1.0;
    if (!(weight > 0.0) || !std::isfinite(weight))
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": nonpositive weight");
    if (fields[0] == fields[1])
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": self-loop");
    const VertexId a = g.intern_vertex(fields[0]);
    const VertexId b = g.intern_vertex(fields[1]);
    if (g.adjacent(a, b))
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": duplicate edge");
    g.add_edge(a, b, weight);
  }
  return g;
}

DistanceMatrix::DistanceMatrix(std::size_t size, double fill) : size_(size), data_(size * size, fill) {
  for (std::size_t i = 0; i < size; ++i) data_[i * size + i] = 0.0;
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  DistanceMatrix out = *this;
  for (double& x : out.data_) x *= factor;
  return out;
}

void DistanceMatrix::validate() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)(i, i) != 0.0) fail(ErrorKind::Infeasible, "distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < i; ++j) {
      const double a = (*this)(i, j);
      const double b = (*this)(j, i);
      if (std::isnan(a) || a < 0.0) fail(ErrorKind::Infeasible, "negative distance");
      if (a != b && std::abs(a - b) > 1e-12 * std::max(std::abs(a), 1.0))
        fail(ErrorKind::Infeasible, "distance matrix is not symmetric");
    }
  }
}

std::vector<double> distances_from(const Graph& g, VertexId source) {
  std::vector<double> dist(g.vertex_count(), kInfinity);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      const double cand = d + g.edge(nb.edge).weight;
      if (cand < dist[nb.vertex]) {
        dist[nb.vertex] = cand;
        queue.emplace(cand, nb.vertex);
      }
    }
  }
  return dist;
}

std::vector<double> hops_from(const Graph& g, VertexId source) {
  std::vector<double> dist(g.vertex_count(), kInfinity);
  std::deque<VertexId> queue{source};
  dist[source] = 0.0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (dist[nb.vertex] == kInfinity) {
        dist[nb.vertex] = dist[v] + 1.0;
        queue.push_back(nb.vertex);
      }
    }
  }
  return dist;
}

namespace detail {

DistanceMatrix floyd_warshall(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix d(n);
  for (const Edge& e : g.edges()) {
    d(e.u, e.v) = std::min(d(e.u, e.v), e.weight);
    d(e.v, e.u) = d(e.u, e.v);
  }
  const auto& k = simd::kernels();
  for (std::size_t pivot = 0; pivot < n; ++pivot) {
    const std::span<const double> through = d.row(pivot);
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d(i, pivot);
      if (dik == kInfinity || i == pivot) continue;
      k.min_plus_row(d.row(i), through, dik);
    }
  }
  return d;
}

DistanceMatrix dijkstra_all(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix d(n);
  parallel_for(n, [&](std::size_t s) {
    const auto row = distances_from(g, static_cast<VertexId>(s));
    std::copy(row.begin(), row.end(), d.row(s).begin());
  });
  // Path sums accumulated from opposite ends can round differently.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) d(j, i) = d(i, j) = std::min(d(i, j), d(j, i));
  return d;
}

}  // namespace detail

DistanceMatrix shortest_paths(const Graph& g) {
  if (g.vertex_count() <= detail::kFloydWarshallLimit) return detail::floyd_warshall(g);
  return detail::dijkstra_all(g);
}

DistanceMatrix hop_distances(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix d(n);
  parallel_for(n, [&](std::size_t s) {
    const auto row = hops_from(g, static_cast<VertexId>(s));
    std::copy(row.begin(), row.end(), d.row(s).begin());
  });
  return d;
}

PuncturedBall punctured_two_ball(const Graph& g, VertexId center) {
  if (center >= g.vertex_count()) fail(ErrorKind::Infeasible, "unknown vertex");
  std::vector<int> layer(g.vertex_count(), -1);
  layer[center] = 0;
  PuncturedBall ball;
  for (const Neighbor& nb : g.neighbors(center)) {
    layer[nb.vertex] = 1;
    ball.sphere1.push_back(nb.vertex);
  }
  for (VertexId y : ball.sphere1) {
    for (const Neighbor& nb : g.neighbors(y)) {
      if (layer[nb.vertex] == -1) {
        layer[nb.vertex] = 2;
        ball.sphere2.push_back(nb.vertex);
      }
    }
  }
  std::sort(ball.sphere1.begin(), ball.sphere1.end());
  std::sort(ball.sphere2.begin(), ball.sphere2.end());
  for (VertexId y : ball.sphere1) {
    for (const Neighbor& nb : g.neighbors(y)) {
      const int other = layer[nb.vertex];
      // S1–S1 edges are seen from both ends; keep them once.
      if (other == 2 || (other == 1 && nb.vertex > y)) ball.edges.push_back(nb.edge);
    }
  }
  std::sort(ball.edges.begin(), ball.edges.end());
  return ball;
}

std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.vertex_count(), kUnset);
  std::size_t next = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnset) continue;
    std::vector<VertexId> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : g.neighbors(v)) {
        if (label[nb.vertex] == kUnset) {
          label[nb.vertex] = next;
          stack.push_back(nb.vertex);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace curvekit
