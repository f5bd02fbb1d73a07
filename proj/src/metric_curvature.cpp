#include "curvekit/metric_curvature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "curvekit/error.hpp"
#include "curvekit/parallel.hpp"

namespace curvekit {

namespace {

constexpr double kRelativeZero = 1e-12;

// d / r with the zero-radius convention; `zero` is the scale-relative
// threshold below which a radius or distance counts as zero.
double ball_ratio(double dist, double radius, double zero) {
  if (radius <= zero) return dist <= zero ? 0.0 : kInfinity;
  return dist / radius;
}

}  // namespace

GromovRadii gromov_products(double d12, double d13, double d23) {
  const double scale = std::max({d12, d13, d23, 1.0});
  GromovRadii r{0.5 * (d12 + d13 - d23), 0.5 * (d12 + d23 - d13), 0.5 * (d13 + d23 - d12)};
  const double tol = kRelativeZero * scale;
  if (r.r1 < -tol || r.r2 < -tol || r.r3 < -tol)
    fail(ErrorKind::Infeasible, "distances violate the triangle inequality");
  r.r1 = std::max(r.r1, 0.0);
  r.r2 = std::max(r.r2, 0.0);
  r.r3 = std::max(r.r3, 0.0);
  return r;
}

double expansion_constant(const DistanceMatrix& d, std::span<const VertexId> points,
                          std::span<const double> radii) {
  if (points.size() != radii.size()) fail(ErrorKind::Infeasible, "one radius per point required");
  if (points.empty()) fail(ErrorKind::Infeasible, "empty point family");
  double scale = 1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(radii[i] >= 0.0)) fail(ErrorKind::Infeasible, "radii must be nonnegative");
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double dij = d(points[i], points[j]);
      if (!std::isfinite(dij)) fail(ErrorKind::Infeasible, "points lie in different components");
      scale = std::max(scale, dij);
    }
  }
  const double zero = kRelativeZero * scale;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (radii[i] + radii[j] < d(points[i], points[j]) - zero)
        fail(ErrorKind::Infeasible, "radii do not reach: r_i + r_j < d(x_i, x_j)");

  double best = kInfinity;
  for (std::size_t x = 0; x < d.size(); ++x) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size() && worst < best; ++i)
      worst = std::max(worst, ball_ratio(d(points[i], x), radii[i], zero));
    best = std::min(best, worst);
  }
  return best;
}

double sectional_triple(const DistanceMatrix& d, std::array<VertexId, 3> t) {
  if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
    fail(ErrorKind::Infeasible, "sectional curvature needs three distinct vertices");
  const double d12 = d(t[0], t[1]);
  const double d13 = d(t[0], t[2]);
  const double d23 = d(t[1], t[2]);
  if (!std::isfinite(d12) || !std::isfinite(d13) || !std::isfinite(d23))
    fail(ErrorKind::Infeasible, "triple spans different components");
  const GromovRadii r = gromov_products(d12, d13, d23);
  const std::array<double, 3> radii{r.r1, r.r2, r.r3};
  return expansion_constant(d, t, radii);
}

double sectional_triple(const Graph& g, std::array<VertexId, 3> t) {
  return sectional_triple(shortest_paths(g), t);
}

namespace {

std::vector<VertexId> component_members(const DistanceMatrix& d, VertexId anchor) {
  std::vector<VertexId> out;
  for (std::size_t x = 0; x < d.size(); ++x)
    if (std::isfinite(d(anchor, x))) out.push_back(static_cast<VertexId>(x));
  return out;
}

}  // namespace

TripleAverage sectional_edge(const Graph& g, const DistanceMatrix& d, EdgeId e,
                             const TripleSampling& sampling) {
  const Edge& edge = g.edge(e);
  std::vector<VertexId> others;
  for (VertexId w : component_members(d, edge.u))
    if (w != edge.u && w != edge.v) others.push_back(w);
  if (others.empty()) fail(ErrorKind::Infeasible, "edge component has fewer than 3 vertices");

  TripleAverage out{0.0, 0, others.size() <= sampling.exhaustive_limit};
  double total = 0.0;
  if (out.exhaustive) {
    for (VertexId w : others) total += sectional_triple(d, {edge.u, edge.v, w});
    out.triples = others.size();
  } else {
    std::mt19937_64 rng(sampling.seed + e);
    std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);
    for (std::size_t s = 0; s < sampling.samples; ++s)
      total += sectional_triple(d, {edge.u, edge.v, others[pick(rng)]});
    out.triples = sampling.samples;
  }
  out.mean = total / static_cast<double>(out.triples);
  return out;
}

TripleAverage sectional_vertex(const Graph& g, const DistanceMatrix& d, VertexId v,
                               const TripleSampling& sampling) {
  (void)g;
  std::vector<VertexId> others;
  for (VertexId w : component_members(d, v))
    if (w != v) others.push_back(w);
  if (others.size() < 2) fail(ErrorKind::Infeasible, "vertex component has fewer than 3 vertices");

  const std::size_t k = others.size();
  const std::size_t pairs = k * (k - 1) / 2;
  TripleAverage out{0.0, 0, pairs <= sampling.exhaustive_limit};
  double total = 0.0;
  if (out.exhaustive) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) total += sectional_triple(d, {v, others[a], others[b]});
    out.triples = pairs;
  } else {
    std::mt19937_64 rng(sampling.seed + v);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (std::size_t s = 0; s < sampling.samples; ++s) {
      const std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      while (b == a) b = pick(rng);
      total += sectional_triple(d, {v, others[a], others[b]});
    }
    out.triples = sampling.samples;
  }
  out.mean = total / static_cast<double>(out.triples);
  return out;
}

double menger_triangle(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) fail(ErrorKind::Infeasible, "side lengths must be positive");
  const double tol = kRelativeZero * std::max({a, b, c});
  if (a > b + c + tol || b > a + c + tol || c > a + b + tol)
    fail(ErrorKind::Infeasible, "side lengths violate the triangle inequality");
  const double p = 0.5 * (a + b + c);
  const double heron = p * (p - a) * (p - b) * (p - c);
  if (heron <= 0.0) return 0.0;
  return 4.0 * std::sqrt(heron) / (a * b * c);
}

double menger_ricci(const Graph& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  VertexId small = edge.u;
  VertexId large = edge.v;
  if (g.degree(small) > g.degree(large)) std::swap(small, large);
  double total = 0.0;
  for (const Neighbor& nb : g.neighbors(small)) {
    if (nb.vertex == large) continue;
    const auto closing = g.find_edge(large, nb.vertex);
    if (!closing) continue;
    const double a = edge.weight;
    const double b = g.edge(nb.edge).weight;
    const double c = g.edge(*closing).weight;
    // Edge weights need not be metric; a weight triple that is not a
    // triangle has no circumcircle and contributes nothing.
    const double tol = kRelativeZero * std::max({a, b, c});
    if (a > b + c + tol || b > a + c + tol || c > a + b + tol) continue;
    total += menger_triangle(a, b, c);
  }
  return total;
}

double haantjes_path(const Graph& g, std::span<const VertexId> path, const DistanceMatrix& d) {
  if (path.size() < 2) fail(ErrorKind::Infeasible, "path needs at least two vertices");
  if (path.front() == path.back()) fail(ErrorKind::Infeasible, "path endpoints must differ");
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = g.find_edge(path[i], path[i + 1]);
    if (!e) fail(ErrorKind::Infeasible, "path step " + g.name(path[i]) + "-" + g.name(path[i + 1]) +
                                            " is not an edge");
    length += g.edge(*e).weight;
  }
  const double chord = d(path.front(), path.back());
  const double excess = std::max(0.0, length - chord);
  return std::sqrt(excess / (chord * chord * chord));
}

double haantjes_path(const Graph& g, std::span<const VertexId> path) {
  return haantjes_path(g, path, shortest_paths(g));
}

namespace {

struct PathSearch {
  const Graph& g;
  VertexId target;
  int max_len;
  double chord;
  std::vector<char> on_path;
  double total = 0.0;

  void extend(VertexId at, int hops, double length) {
    for (const Neighbor& nb : g.neighbors(at)) {
      if (on_path[nb.vertex]) continue;
      const double next_length = length + g.edge(nb.edge).weight;
      if (nb.vertex == target) {
        if (hops + 1 >= 2) {
          const double excess = std::max(0.0, next_length - chord);
          total += std::sqrt(excess / (chord * chord * chord));
        }
        continue;
      }
      if (hops + 1 < max_len) {
        on_path[nb.vertex] = 1;
        extend(nb.vertex, hops + 1, next_length);
        on_path[nb.vertex] = 0;
      }
    }
  }
};

}  // namespace

double haantjes_ricci(const Graph& g, EdgeId e, int max_len, const DistanceMatrix& d) {
  if (max_len < 2 || max_len > kMaxHaantjesLength)
    fail(ErrorKind::Infeasible,
         "max_len must lie in [2, " + std::to_string(kMaxHaantjesLength) + "]");
  const Edge& edge = g.edge(e);
  PathSearch search{g, edge.v, max_len, d(edge.u, edge.v), std::vector<char>(g.vertex_count(), 0)};
  search.on_path[edge.u] = 1;
  search.extend(edge.u, 0, 0.0);
  return search.total;
}

double haantjes_ricci(const Graph& g, EdgeId e, int max_len) {
  return haantjes_ricci(g, e, max_len, shortest_paths(g));
}

namespace {

std::vector<std::pair<std::string, std::string>> sampling_parameters(const TripleSampling& s) {
  return {{"exhaustive_limit", std::to_string(s.exhaustive_limit)},
          {"samples", std::to_string(s.samples)},
          {"seed", std::to_string(s.seed)}};
}

}  // namespace

CurvatureReport sectional_edge_report(const Graph& g, const TripleSampling& sampling) {
  CurvatureReport report;
  report.model = "sectional-edge";
  report.parameters = sampling_parameters(sampling);
  report.kind = ObjectKind::Edge;
  const DistanceMatrix d = shortest_paths(g);
  std::vector<double> values(g.edge_count(), 0.0);
  std::vector<char> defined(g.edge_count(), 0);
  parallel_for(g.edge_count(), [&](std::size_t e) {
    const Edge& edge = g.edge(static_cast<EdgeId>(e));
    for (std::size_t x = 0; x < d.size(); ++x) {
      if (x != edge.u && x != edge.v && std::isfinite(d(edge.u, x))) {
        values[e] = sectional_edge(g, d, static_cast<EdgeId>(e), sampling).mean;
        defined[e] = 1;
        return;
      }
    }
  });
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (defined[e]) report.add({g.edge(e).u, g.edge(e).v}, values[e]);
  return report;
}

CurvatureReport sectional_vertex_report(const Graph& g, const TripleSampling& sampling) {
  CurvatureReport report;
  report.model = "sectional-vertex";
  report.parameters = sampling_parameters(sampling);
  report.kind = ObjectKind::Vertex;
  const DistanceMatrix d = shortest_paths(g);
  std::vector<double> values(g.vertex_count(), 0.0);
  std::vector<char> defined(g.vertex_count(), 0);
  parallel_for(g.vertex_count(), [&](std::size_t v) {
    std::size_t reachable = 0;
    for (std::size_t x = 0; x < d.size(); ++x) reachable += std::isfinite(d(v, x)) ? 1 : 0;
    if (reachable < 3) return;
    values[v] = sectional_vertex(g, d, static_cast<VertexId>(v), sampling).mean;
    defined[v] = 1;
  });
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (defined[v]) report.add({v}, values[v]);
  return report;
}

CurvatureReport menger_report(const Graph& g) {
  CurvatureReport report;
  report.model = "menger";
  report.kind = ObjectKind::Edge;
  for (EdgeId e = 0; e < g.edge_count(); ++e) report.add({g.edge(e).u, g.edge(e).v}, menger_ricci(g, e));
  return report;
}

CurvatureReport haantjes_report(const Graph& g, int max_len) {
  CurvatureReport report;
  report.model = "haantjes";
  report.parameters = {{"max_len", std::to_string(max_len)}};
  report.kind = ObjectKind::Edge;
  const DistanceMatrix d = shortest_paths(g);
  std::vector<double> values(g.edge_count());
  parallel_for(g.edge_count(), [&](std::size_t e) {
    values[e] = haantjes_ricci(g, static_cast<EdgeId>(e), max_len, d);
  });
  for (EdgeId e = 0; e < g.edge_count(); ++e) report.add({g.edge(e).u, g.edge(e).v}, values[e]);
  return report;
}

}  // namespace curvekit
