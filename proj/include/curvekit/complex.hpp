#pragma once

// Simplicial complexes over a graph's vertex set: clique and Vietoris–Rips
// constructions plus the face / coface / parallel incidence that Forman
// curvature is built from.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "curvekit/graph.hpp"
#include "curvekit/pointcloud.hpp"

namespace curvekit {

// Sorted, duplicate-free vertex tuple; a p-simplex has p + 1 vertices.
using Simplex = std::vector<VertexId>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Complex on `vertex_count` vertices with every singleton present.
  explicit SimplicialComplex(std::size_t vertex_count);

  // Inserts `simplex` and its missing faces (faces get weight 1). Re-adding an
  // existing simplex only updates its weight.
  void add_simplex(Simplex simplex, double weight = 1.0);

  std::size_t vertex_count() const { return by_dim_.empty() ? 0 : by_dim_[0].size(); }

  // Highest dimension holding at least one simplex; -1 for the empty complex.
  int max_dim() const;

  std::span<const Simplex> simplices(int dim) const;
  std::size_t count(int dim) const { return simplices(dim).size(); }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  std::optional<std::size_t> index_of(const Simplex& s) const;

  double weight(const Simplex& s) const;
  void set_weight(const Simplex& s, double weight);

  // Stored (p+1)-simplices containing the p-simplex at `index`.
  std::span<const std::size_t> coface_indices(int dim, std::size_t index) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> lookup_;
  std::vector<std::vector<std::vector<std::size_t>>> cofaces_;

  std::size_t insert(const Simplex& s, double weight);
};

struct Incidence {
  std::vector<Simplex> faces;     // (p-1)-simplices of σ
  std::vector<Simplex> cofaces;   // stored (p+1)-simplices containing σ
  std::vector<Simplex> parallel;  // p-simplices sharing a face xor a coface with σ
};

// Throws when σ is not in K.
Incidence incidence(const SimplicialComplex& k, const Simplex& sigma);

// All cliques of g with at most max_dim + 1 vertices. Vertex and edge weights
// are taken from g; higher simplices get weight 1.
SimplicialComplex clique_complex(const Graph& g, int max_dim);

// σ included iff diameter(σ) <= eps and |σ| <= max_dim + 1.
SimplicialComplex vietoris_rips(const DistanceMatrix& d, double eps, int max_dim);
SimplicialComplex vietoris_rips(const PointCloud& cloud, double eps, int max_dim);

// Applies "v1 v2 ... vk w" lines; vertex names are resolved through g.
void apply_simplex_weights(SimplicialComplex& k, const Graph& g, std::string_view text);

}  // namespace curvekit
