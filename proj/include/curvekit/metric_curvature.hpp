#pragma once

// Curvatures defined from the shortest-path metric alone: sectional curvature
// through Gromov products and ball expansion, Menger (circumradius) and
// Haantjes (arc versus chord) curvature with their edge aggregations.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "curvekit/graph.hpp"
#include "curvekit/report.hpp"

namespace curvekit {

struct GromovRadii {
  double r1;
  double r2;
  double r3;
};

// Radii of three pairwise tangent balls: r1 = ½(d12 + d13 - d23), etc.
// Throws when the triangle inequality fails.
GromovRadii gromov_products(double d12, double d13, double d23);

// inf over every vertex x of max_i ratio(d(v_i, x), r_i), with
// ratio(d, 0) = 0 when d = 0 and +inf otherwise.
double sectional_triple(const DistanceMatrix& d, std::array<VertexId, 3> triple);
double sectional_triple(const Graph& g, std::array<VertexId, 3> triple);

// Generalization to any finite family with radii satisfying
// r_i + r_j >= d(x_i, x_j).
double expansion_constant(const DistanceMatrix& d, std::span<const VertexId> points,
                          std::span<const double> radii);

inline constexpr std::size_t kExhaustiveTripleLimit = 100000;
inline constexpr std::size_t kDefaultTripleSamples = 10000;
inline constexpr std::uint64_t kDefaultSeed = 0x5eedULL;

struct TripleAverage {
  double mean;
  std::size_t triples;  // number of triples averaged
  bool exhaustive;
};

struct TripleSampling {
  std::size_t exhaustive_limit = kExhaustiveTripleLimit;
  std::size_t samples = kDefaultTripleSamples;
  std::uint64_t seed = kDefaultSeed;
};

// Mean sectional curvature over triples in e's component containing both
// endpoints of e (resp. containing v).
TripleAverage sectional_edge(const Graph& g, const DistanceMatrix& d, EdgeId e,
                             const TripleSampling& sampling = {});
TripleAverage sectional_vertex(const Graph& g, const DistanceMatrix& d, VertexId v,
                               const TripleSampling& sampling = {});

// 4 √(p(p-a)(p-b)(p-c)) / (abc); 0 for degenerate triangles.
double menger_triangle(double a, double b, double c);

// Σ over triangles {u, v, w} of menger_triangle with edge-weight side lengths.
double menger_ricci(const Graph& g, EdgeId e);

// √((l(π) - d) / d³) for the walk π, d the shortest-path distance of its ends.
double haantjes_path(const Graph& g, std::span<const VertexId> path, const DistanceMatrix& d);
double haantjes_path(const Graph& g, std::span<const VertexId> path);

inline constexpr int kDefaultHaantjesLength = 4;
inline constexpr int kMaxHaantjesLength = 8;

// Σ of haantjes_path over simple paths between e's endpoints with 2..max_len hops.
double haantjes_ricci(const Graph& g, EdgeId e, int max_len, const DistanceMatrix& d);
double haantjes_ricci(const Graph& g, EdgeId e, int max_len);

CurvatureReport sectional_edge_report(const Graph& g, const TripleSampling& sampling = {});
CurvatureReport sectional_vertex_report(const Graph& g, const TripleSampling& sampling = {});
CurvatureReport menger_report(const Graph& g);
CurvatureReport haantjes_report(const Graph& g, int max_len);

}  // namespace curvekit
