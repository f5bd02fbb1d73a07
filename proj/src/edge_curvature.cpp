#include "curvekit/edge_curvature.hpp"

#include <cmath>
#include <string>

#include "curvekit/error.hpp"
#include "curvekit/parallel.hpp"
#include "curvekit/transport.hpp"

namespace curvekit {

double forman_edge(const Graph& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  const double we = edge.weight;
  const double wu = g.vertex_weight(edge.u);
  const double wv = g.vertex_weight(edge.v);

  double at_u = 0.0;
  for (const Neighbor& nb : g.neighbors(edge.u))
    if (nb.edge != e) at_u += wu / std::sqrt(we * g.edge(nb.edge).weight);
  double at_v = 0.0;
  for (const Neighbor& nb : g.neighbors(edge.v))
    if (nb.edge != e) at_v += wv / std::sqrt(we * g.edge(nb.edge).weight);

  return we * (wu / we + wv / we - at_u - at_v);
}

namespace {

// Weighted edge formula on a complex: coface and face terms minus, for each
// parallel edge, |Σ_shared triangles sqrt(we·wê)/wf − Σ_shared vertices wv/sqrt(we·wê)|.
double forman_edge_weighted(const SimplicialComplex& k, const Simplex& e, const Incidence& inc) {
  const double we = k.weight(e);
  double positive = 0.0;
  for (const Simplex& f : inc.cofaces) positive += we / k.weight(f);
  for (const Simplex& v : inc.faces) positive += k.weight(v) / we;

  double negative = 0.0;
  for (const Simplex& other : inc.parallel) {
    const double wo = k.weight(other);
    const double root = std::sqrt(we * wo);
    double triangles = 0.0;
    // A shared triangle is e ∪ other when the union has three vertices.
    Simplex joined = e;
    for (VertexId v : other)
      if (v != e[0] && v != e[1]) joined.push_back(v);
    std::sort(joined.begin(), joined.end());
    if (joined.size() == 3 && k.contains(joined)) triangles += root / k.weight(joined);
    double vertices = 0.0;
    for (VertexId v : other)
      if (v == e[0] || v == e[1]) vertices += k.weight(Simplex{v}) / root;
    negative += std::abs(triangles - vertices);
  }
  return we * (positive - negative);
}

}  // namespace

double forman_simplex(const SimplicialComplex& k, const Simplex& sigma, bool weighted) {
  const Incidence inc = incidence(k, sigma);
  if (weighted) {
    if (sigma.size() != 2)
      fail(ErrorKind::Infeasible, "weighted Forman curvature is defined for edges only");
    return forman_edge_weighted(k, sigma, inc);
  }
  return static_cast<double>(inc.faces.size()) + static_cast<double>(inc.cofaces.size()) -
         static_cast<double>(inc.parallel.size());
}

double ollivier_edge(const Graph& g, EdgeId e, double alpha, const DistanceMatrix& d) {
  const Edge& edge = g.edge(e);
  const double length = d(edge.u, edge.v);
  if (!(length > 0.0) || !std::isfinite(length))
    fail(ErrorKind::Numerical, "edge endpoints have no positive finite distance");
  const DiscreteMeasure mu = lazy_measure(g, edge.u, alpha);
  const DiscreteMeasure nu = lazy_measure(g, edge.v, alpha);
  return 1.0 - wasserstein1(mu, nu, d) / length;
}

double ollivier_edge(const Graph& g, EdgeId e, double alpha) {
  return ollivier_edge(g, e, alpha, shortest_paths(g));
}

std::vector<double> ollivier_all(const Graph& g, double alpha, const DistanceMatrix& d) {
  std::vector<double> out(g.edge_count());
  parallel_for(g.edge_count(),
               [&](std::size_t e) { out[e] = ollivier_edge(g, static_cast<EdgeId>(e), alpha, d); });
  return out;
}

CurvatureReport forman_report(const Graph& g) {
  CurvatureReport report;
  report.model = "forman";
  report.kind = ObjectKind::Edge;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    report.add({g.edge(e).u, g.edge(e).v}, forman_edge(g, e));
  return report;
}

CurvatureReport forman_simplex_report(const SimplicialComplex& k, int dim, bool weighted) {
  CurvatureReport report;
  report.model = "forman-simplex";
  report.parameters = {{"dim", std::to_string(dim)}, {"weighted", weighted ? "1" : "0"}};
  report.kind = ObjectKind::Simplex;
  const auto simplices = k.simplices(dim);
  std::vector<double> values(simplices.size());
  parallel_for(simplices.size(),
               [&](std::size_t i) { values[i] = forman_simplex(k, simplices[i], weighted); });
  for (std::size_t i = 0; i < simplices.size(); ++i) report.add(simplices[i], values[i]);
  return report;
}

CurvatureReport ollivier_report(const Graph& g, double alpha, GroundMetric metric) {
  CurvatureReport report;
  report.model = "ollivier";
  report.parameters = {{"alpha", format_real(alpha)},
                       {"metric", metric == GroundMetric::Hops ? "hops" : "weighted"}};
  report.kind = ObjectKind::Edge;
  const DistanceMatrix d = metric == GroundMetric::Hops ? hop_distances(g) : shortest_paths(g);
  const auto values = ollivier_all(g, alpha, d);
  for (EdgeId e = 0; e < g.edge_count(); ++e) report.add({g.edge(e).u, g.edge(e).v}, values[e]);
  return report;
}

}  // namespace curvekit
