#pragma once

// Vertex-level curvatures: Bakry–Émery (n = ∞), resistance curvature, and
// averages of edge curvatures onto vertices.

#include <Eigen/Dense>
#include <vector>

#include "curvekit/graph.hpp"
#include "curvekit/report.hpp"

namespace curvekit {

// Γ(f)(v) and Γ₂(f)(v) as symmetric matrices on functions over B_2(v), for
// the non-normalized Laplacian Δf(x) = Σ_{y~x} (f(y) - f(x)). Edge weights are
// ignored. basis[0] is the center, followed by S1 then S2 (each ascending).
struct QuadraticFormPair {
  std::vector<VertexId> basis;
  Eigen::MatrixXd gamma;
  Eigen::MatrixXd gamma2;
};

QuadraticFormPair bakry_emery_forms(const Graph& g, VertexId v);

// Largest K with Γ₂(f)(v) >= K Γ(f)(v) for all f. Returns -inf when Γ₂ is
// unbounded below relative to Γ. Throws for an isolated vertex.
double bakry_emery(const Graph& g, VertexId v);

// Effective resistances from one dense factorization per connected component.
class ResistanceCalculator {
 public:
  explicit ResistanceCalculator(const Graph& g);

  // Throws when i and j lie in different components.
  double operator()(VertexId i, VertexId j) const;

  bool connected() const { return component_count_ <= 1; }

 private:
  std::vector<std::size_t> component_;
  std::vector<std::size_t> local_;       // index inside the grounded system, or npos for the ground
  std::vector<Eigen::MatrixXd> inverse_;  // inverse grounded Laplacian per component
  std::size_t component_count_ = 0;
};

double effective_resistance(const Graph& g, VertexId i, VertexId j);

// 1 - ½ Σ_{j~v} Ω_vj w_vj. Requires a connected graph.
double resistance_vertex(const Graph& g, VertexId v);

enum class ResistanceDenominator { EffectiveResistance, Weight };

// 2 (p_R(u) + p_R(v)) / ω with ω = Ω_uv (default) or the edge weight.
double resistance_edge(const Graph& g, EdgeId e,
                       ResistanceDenominator denominator = ResistanceDenominator::EffectiveResistance);

// Mean of the edge curvatures incident to v; every incident edge must be in
// the report.
double scalar_from_edges(const Graph& g, VertexId v, const CurvatureReport& edge_values);

// (1/deg v) Σ_{e∋v} w(e)² κ_O(e).
double scalar_orc(const Graph& g, VertexId v, double alpha);
double scalar_orc(const Graph& g, VertexId v, double alpha, const DistanceMatrix& d);

CurvatureReport bakry_emery_report(const Graph& g);
CurvatureReport resistance_vertex_report(const Graph& g);
CurvatureReport resistance_edge_report(const Graph& g, ResistanceDenominator denominator);
CurvatureReport scalar_from_edges_report(const Graph& g, const CurvatureReport& edge_values);
CurvatureReport scalar_orc_report(const Graph& g, double alpha);

}  // namespace curvekit
