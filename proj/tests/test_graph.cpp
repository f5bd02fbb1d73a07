#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "curvekit/error.hpp"
#include "curvekit/graph.hpp"
#include "curvekit/pointcloud.hpp"
#include "oracles.hpp"

using namespace curvekit;

namespace {

bool close(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected curvekit::Error");
  return ErrorKind::Numerical;
}

}  // namespace

TEST_CASE("edge list parsing") {
  const Graph p3 = load_graph("a b\nb c");
  CHECK(p3.vertex_count() == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.name(0) == "a");
  CHECK(p3.name(2) == "c");
  CHECK(p3.edge(0).weight == 1.0);

  const Graph weighted = load_graph("# header\n\nx y 2.5  # trailing\ny z 0.5\n");
  CHECK(weighted.edge_count() == 2);
  CHECK(weighted.edge(*weighted.find_edge(0, 1)).weight == 2.5);

  CHECK(kind_of([] { load_graph("a a"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_graph("a b 0.0"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_graph("a b -1"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_graph("a b\nb a"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_graph("a"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_graph("a b c d"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_graph("a b 1x"); }) == ErrorKind::Parse);
}

TEST_CASE("shortest paths on small examples") {
  const Graph p3 = load_graph("a b\nb c");
  const DistanceMatrix d = shortest_paths(p3);
  CHECK(d(0, 2) == 2.0);
  CHECK(d(2, 0) == 2.0);

  const DistanceMatrix k5 = shortest_paths(oracle::complete_graph(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(k5(i, j) == (i == j ? 0.0 : 1.0));

  const Graph tri = load_graph("a b 3\na c 1\nc b 1");
  CHECK(shortest_paths(tri)(0, 1) == 2.0);

  const Graph split = load_graph("a b\nc d");
  CHECK(shortest_paths(split)(0, 2) == kInfinity);
}

TEST_CASE("shortest paths agree with Bellman-Ford and satisfy the metric axioms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    const Graph g = oracle::random_graph(rng, n, 0.15, true);
    const auto ref = oracle::bellman_ford_all(g);
    const DistanceMatrix fw = detail::floyd_warshall(g);
    const DistanceMatrix dj = detail::dijkstra_all(g);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(close(fw(i, j), ref[i][j]));
        CHECK(close(dj(i, j), ref[i][j]));
        CHECK(fw(i, j) == fw(j, i));
        CHECK(dj(i, j) == dj(j, i));
      }
      CHECK(fw(i, i) == 0.0);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (fw(i, j) < kInfinity && fw(j, k) < kInfinity) CHECK(fw(i, k) <= fw(i, j) + fw(j, k) + 1e-12);
  }
}

TEST_CASE("unit-weight shortest paths equal hop counts") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 50 + rng() % 51;
    const Graph g = oracle::random_graph(rng, n, 0.05, false);
    const DistanceMatrix d = shortest_paths(g);
    const DistanceMatrix h = hop_distances(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(d(i, j) == h(i, j));
  }
}

TEST_CASE("large graphs route through per-source Dijkstra") {
  std::mt19937_64 rng(13);
  const Graph g = oracle::random_connected_graph(rng, detail::kFloydWarshallLimit + 20, 0.004, true);
  const DistanceMatrix d = shortest_paths(g);
  const DistanceMatrix fw = detail::floyd_warshall(g);
  for (VertexId s : {0u, 7u, 300u}) {
    const auto row = distances_from(g, s);
    for (std::size_t j = 0; j < g.vertex_count(); ++j) {
      CHECK(close(d(s, j), row[j]));
      CHECK(close(fw(s, j), row[j]));
    }
  }
}

TEST_CASE("punctured two-ball") {
  SUBCASE("star leaf") {
    const Graph star = load_graph("c l1\nc l2\nc l3");
    const PuncturedBall b = punctured_two_ball(star, *star.find_vertex("l1"));
    CHECK(b.sphere1 == std::vector<VertexId>{*star.find_vertex("c")});
    CHECK(b.sphere2.size() == 2);
    CHECK(b.edges.size() == 2);
  }
  SUBCASE("path center") {
    const Graph p3 = load_graph("a b\nb c");
    const PuncturedBall b = punctured_two_ball(p3, 1);
    CHECK(b.sphere1.size() == 2);
    CHECK(b.sphere2.empty());
    CHECK(b.edges.empty());
  }
  SUBCASE("two triangles sharing a vertex") {
    const Graph bowtie = load_graph("v a\nv b\na b\nv c\nv d\nc d");
    const PuncturedBall b = punctured_two_ball(bowtie, 0);
    CHECK(b.sphere1.size() == 4);
    CHECK(b.sphere2.empty());
    REQUIRE(b.edges.size() == 2);
    CHECK(b.edges[0] == *bowtie.find_edge(1, 2));
    CHECK(b.edges[1] == *bowtie.find_edge(3, 4));
  }
  SUBCASE("never an S2-S2 edge or the center") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = oracle::random_graph(rng, 12, 0.3, false);
      const DistanceMatrix h = hop_distances(g);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const PuncturedBall b = punctured_two_ball(g, v);
        for (EdgeId e : b.edges) {
          const Edge& edge = g.edge(e);
          CHECK(edge.u != v);
          CHECK(edge.v != v);
          CHECK(std::min(h(v, edge.u), h(v, edge.v)) == 1.0);
          CHECK(std::max(h(v, edge.u), h(v, edge.v)) <= 2.0);
        }
      }
    }
  }
}

TEST_CASE("epsilon graph from collinear points") {
  const PointCloud line = parse_point_csv("0\n1\n2\n");
  CHECK(epsilon_graph(line, 1.0).edge_count() == 2);
  CHECK(epsilon_graph(line, 0.5).edge_count() == 0);
  const Graph full = epsilon_graph(line, 2.0);
  CHECK(full.edge_count() == 3);
  CHECK(full.edge(*full.find_edge(0, 2)).weight == 2.0);
  CHECK(kind_of([&] { epsilon_graph(line, 0.0); }) == ErrorKind::Infeasible);

  std::mt19937_64 rng(15);
  PointCloud cloud{3, {}};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 90; ++i) cloud.coords.push_back(u(rng));
  const Graph small = epsilon_graph(cloud, 0.3);
  const Graph large = epsilon_graph(cloud, 0.5);
  for (const Edge& e : small.edges()) CHECK(large.adjacent(e.u, e.v));
}

TEST_CASE("point and distance CSV parsing") {
  const PointCloud cloud = parse_point_csv("0,0\n3 4\n# comment\n");
  CHECK(cloud.dim == 2);
  CHECK(cloud.size() == 2);
  CHECK(euclidean_distances(cloud)(0, 1) == 5.0);
  CHECK(kind_of([] { parse_point_csv("1,2\n3\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_point_csv("1,x\n"); }) == ErrorKind::Parse);

  const DistanceMatrix d = parse_distance_csv("0,1\n1,0\n");
  CHECK(d(0, 1) == 1.0);
  CHECK(kind_of([] { parse_distance_csv("0,1\n2,0\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_distance_csv("1,1\n1,0\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_distance_csv("0,1,2\n1,0,1\n"); }) == ErrorKind::Parse);
}

TEST_CASE("components and edge removal") {
  const Graph g = load_graph("a b\nb c\nd e\nf g");
  const auto labels = connected_components(g);
  CHECK(labels == std::vector<std::size_t>{0, 0, 0, 1, 1, 2, 2});
  const std::vector<EdgeId> cut{*g.find_edge(0, 1)};
  const Graph h = g.without_edges(cut);
  CHECK(h.edge_count() == 3);
  CHECK(!h.adjacent(0, 1));
  CHECK(h.adjacent(1, 2));
  CHECK(connected_components(h) == std::vector<std::size_t>{0, 1, 1, 2, 2, 3, 3});
}
