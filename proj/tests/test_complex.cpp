#include <doctest.h>

#include <algorithm>
#include <random>

#include "curvekit/complex.hpp"
#include "curvekit/edge_curvature.hpp"
#include "curvekit/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace curvekit;

namespace {

void check_downward_closed(const SimplicialComplex& k) {
  for (int p = 1; p <= k.max_dim(); ++p) {
    for (const Simplex& s : k.simplices(p)) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        CHECK(k.contains(face));
      }
    }
  }
  for (VertexId v = 0; v < k.vertex_count(); ++v) CHECK(k.contains(Simplex{v}));
}

std::size_t binomial(std::size_t n, std::size_t r) {
  std::size_t out = 1;
  for (std::size_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

}  // namespace

TEST_CASE("clique complex counts") {
  const SimplicialComplex tri = clique_complex(oracle::complete_graph(3), 2);
  CHECK(tri.count(0) == 3);
  CHECK(tri.count(1) == 3);
  CHECK(tri.count(2) == 1);

  const SimplicialComplex c4 = clique_complex(oracle::cycle_graph(4), 2);
  CHECK(c4.count(1) == 4);
  CHECK(c4.count(2) == 0);

  const SimplicialComplex k4 = clique_complex(oracle::complete_graph(4), 3);
  CHECK(k4.count(0) == 4);
  CHECK(k4.count(1) == 6);
  CHECK(k4.count(2) == 4);
  CHECK(k4.count(3) == 1);

  for (std::size_t n = 2; n <= 8; ++n) {
    for (int max_dim = 1; max_dim <= 5; ++max_dim) {
      const SimplicialComplex k = clique_complex(oracle::complete_graph(n), max_dim);
      for (int p = 0; p <= max_dim; ++p)
        CHECK(k.count(p) == (static_cast<std::size_t>(p) < n ? binomial(n, p + 1) : 0));
      check_downward_closed(k);
    }
  }
}

TEST_CASE("clique complex copies graph weights") {
  Graph g = load_graph("a b 2\nb c 3\na c 4");
  g.set_vertex_weight(1, 5.0);
  const SimplicialComplex k = clique_complex(g, 2);
  CHECK(k.weight({0, 1}) == 2.0);
  CHECK(k.weight({0, 2}) == 4.0);
  CHECK(k.weight({1}) == 5.0);
  CHECK(k.weight({0, 1, 2}) == 1.0);
}

TEST_CASE("Vietoris-Rips construction") {
  const double h = std::sqrt(3.0) / 2.0;
  const PointCloud tri{2, {0.0, 0.0, 1.0, 0.0, 0.5, h}};
  const SimplicialComplex filled = vietoris_rips(tri, 1.0 + 1e-12, 2);
  CHECK(filled.count(2) == 1);
  CHECK(filled.count(1) == 3);
  const SimplicialComplex bare = vietoris_rips(tri, 0.9, 2);
  CHECK(bare.count(1) == 0);
  CHECK(bare.count(0) == 3);

  const PointCloud line{1, {0.0, 1.0, 2.0}};
  const SimplicialComplex path = vietoris_rips(line, 1.0, 2);
  CHECK(path.count(1) == 2);
  CHECK(path.count(2) == 0);
  CHECK_THROWS_AS(vietoris_rips(line, 0.0, 2), Error);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    PointCloud cloud{2, {}};
    for (int i = 0; i < 40; ++i) cloud.coords.push_back(u(rng));
    const double eps = 0.15 + 0.05 * trial;
    const SimplicialComplex vr = vietoris_rips(cloud, eps, 3);
    const SimplicialComplex cl = clique_complex(epsilon_graph(cloud, eps), 3);
    for (int p = 0; p <= 3; ++p) {
      REQUIRE(vr.count(p) == cl.count(p));
      for (const Simplex& s : vr.simplices(p)) CHECK(cl.contains(s));
    }
    check_downward_closed(vr);
  }
}

TEST_CASE("incidence on the strip complex") {
  const auto fx = fixture::strip_complex();
  const Incidence f1 = incidence(fx.complex, fx.strip[0]);
  CHECK(f1.faces.size() == 3);
  CHECK(f1.cofaces.empty());
  CHECK(f1.parallel.size() == 4);
  CHECK(fx.complex.count(3) == 4);
  CHECK(fx.complex.count(2) == 5 + 14);
  CHECK_THROWS_AS(incidence(fx.complex, Simplex{0, 1, 12}), Error);
}

TEST_CASE("incidence of small complexes") {
  const SimplicialComplex path = clique_complex(oracle::path_graph(2), 2);
  const Incidence lone = incidence(path, {0, 1});
  CHECK(lone.faces.size() == 2);
  CHECK(lone.cofaces.empty());
  CHECK(lone.parallel.empty());

  // Two triangles sharing an edge, with and without the tetrahedron.
  SimplicialComplex open(4);
  open.add_simplex({0, 1, 2});
  open.add_simplex({0, 1, 3});
  CHECK(incidence(open, {0, 1, 2}).parallel.size() == 1);
  SimplicialComplex solid(4);
  solid.add_simplex({0, 1, 2, 3});
  CHECK(incidence(solid, {0, 1, 2}).parallel.empty());
}

TEST_CASE("parallel counts match the pairwise definition") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_graph(rng, 4 + rng() % 6, 0.55, false);
    const SimplicialComplex k = clique_complex(g, 3);
    for (int p = 0; p <= k.max_dim(); ++p) {
      for (const Simplex& s : k.simplices(p)) {
        const Incidence inc = incidence(k, s);
        CHECK(inc.parallel.size() == oracle::parallel_count(k, s));
        CHECK(inc.faces.size() == (p == 0 ? 0 : s.size()));
        for (const Simplex& t : inc.parallel) {
          const auto back = incidence(k, t).parallel;
          CHECK(std::find(back.begin(), back.end(), s) != back.end());
        }
        const double expected = static_cast<double>(inc.faces.size() + inc.cofaces.size()) -
                                static_cast<double>(oracle::parallel_count(k, s));
        CHECK(forman_simplex(k, s, false) == expected);
      }
    }
  }
}

TEST_CASE("simplex weight file") {
  const Graph g = load_graph("a b\nb c\na c");
  SimplicialComplex k = clique_complex(g, 2);
  apply_simplex_weights(k, g, "a b 2.5\n# note\nc b a 3\n");
  CHECK(k.weight({0, 1}) == 2.5);
  CHECK(k.weight({0, 1, 2}) == 3.0);
  CHECK_THROWS_AS(apply_simplex_weights(k, g, "a z 1\n"), Error);
  CHECK_THROWS_AS(apply_simplex_weights(k, g, "a b 0\n"), Error);
}
