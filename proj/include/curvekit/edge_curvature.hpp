#pragma once

// Forman–Ricci curvature (graphs and simplicial complexes) and Ollivier–Ricci
// curvature (graphs).

#include "curvekit/complex.hpp"
#include "curvekit/graph.hpp"
#include "curvekit/report.hpp"

namespace curvekit {

inline constexpr double kDefaultAlpha = 0.5;

// Weighted Forman–Ricci curvature of a graph edge. The incident-edge sums run
// separately over the edges at each endpoint (e itself excluded); with unit
// weights this is 4 - deg(u) - deg(v).
double forman_edge(const Graph& g, EdgeId e);

// Forman curvature of a p-simplex. Unweighted: #faces + #cofaces - #parallel.
// Weighted mode is defined for edges only and throws for other dimensions.
double forman_simplex(const SimplicialComplex& k, const Simplex& sigma, bool weighted);

// 1 - W1(m_u, m_v) / d(u, v) with alpha-lazy measures. `d` is the ground
// metric (weighted shortest paths unless the caller chose hop counts).
double ollivier_edge(const Graph& g, EdgeId e, double alpha, const DistanceMatrix& d);
double ollivier_edge(const Graph& g, EdgeId e, double alpha);

enum class GroundMetric { Weighted, Hops };

CurvatureReport forman_report(const Graph& g);
CurvatureReport forman_simplex_report(const SimplicialComplex& k, int dim, bool weighted);
CurvatureReport ollivier_report(const Graph& g, double alpha,
                                GroundMetric metric = GroundMetric::Weighted);

// Ollivier curvature for every edge, indexed by EdgeId, under a given metric.
std::vector<double> ollivier_all(const Graph& g, double alpha, const DistanceMatrix& d);

}  // namespace curvekit
