#include "curvekit/complex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "curvekit/error.hpp"

namespace curvekit {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (VertexId v : s) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

SimplicialComplex::SimplicialComplex(std::size_t vertex_count) {
  for (std::size_t v = 0; v < vertex_count; ++v) insert(Simplex{static_cast<VertexId>(v)}, 1.0);
}

int SimplicialComplex::max_dim() const {
  for (int p = static_cast<int>(by_dim_.size()) - 1; p >= 0; --p)
    if (!by_dim_[p].empty()) return p;
  return -1;
}

std::span<const Simplex> SimplicialComplex::simplices(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return {};
  return by_dim_[dim];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty()) return std::nullopt;
  const std::size_t p = s.size() - 1;
  if (p >= lookup_.size()) return std::nullopt;
  auto it = lookup_[p].find(s);
  if (it == lookup_[p].end()) return std::nullopt;
  return it->second;
}

double SimplicialComplex::weight(const Simplex& s) const {
  auto idx = index_of(s);
  if (!idx) fail(ErrorKind::Infeasible, "simplex not in complex");
  return weights_[s.size() - 1][*idx];
}

void SimplicialComplex::set_weight(const Simplex& s, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight))
    fail(ErrorKind::Infeasible, "simplex weight must be positive");
  auto idx = index_of(s);
  if (!idx) fail(ErrorKind::Infeasible, "simplex not in complex");
  weights_[s.size() - 1][*idx] = weight;
}

std::span<const std::size_t> SimplicialComplex::coface_indices(int dim, std::size_t index) const {
  if (dim < 0 || dim >= static_cast<int>(cofaces_.size())) return {};
  return cofaces_[dim][index];
}

std::size_t SimplicialComplex::insert(const Simplex& s, double weight) {
  const std::size_t p = s.size() - 1;
  while (by_dim_.size() <= p) {
    by_dim_.emplace_back();
    weights_.emplace_back();
    lookup_.emplace_back();
    cofaces_.emplace_back();
  }
  const std::size_t idx = by_dim_[p].size();
  by_dim_[p].push_back(s);
  weights_[p].push_back(weight);
  lookup_[p].emplace(s, idx);
  cofaces_[p].emplace_back();
  return idx;
}

void SimplicialComplex::add_simplex(Simplex simplex, double weight) {
  if (simplex.empty()) fail(ErrorKind::Infeasible, "empty simplex");
  if (!(weight > 0.0) || !std::isfinite(weight))
    fail(ErrorKind::Infeasible, "simplex weight must be positive");
  std::sort(simplex.begin(), simplex.end());
  if (std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end())
    fail(ErrorKind::Infeasible, "simplex has a repeated vertex");
  if (simplex.back() >= vertex_count())
    fail(ErrorKind::Infeasible, "simplex vertex outside the complex");

  if (auto existing = index_of(simplex)) {
    weights_[simplex.size() - 1][*existing] = weight;
    return;
  }
  // Faces first, so every stored simplex finds its faces when it is linked.
  if (simplex.size() > 1) {
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      Simplex face;
      face.reserve(simplex.size() - 1);
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != drop) face.push_back(simplex[i]);
      if (!contains(face)) add_simplex(face, 1.0);
    }
  }
  const std::size_t idx = insert(simplex, weight);
  if (simplex.size() > 1) {
    const std::size_t p = simplex.size() - 1;
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      Simplex face;
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != drop) face.push_back(simplex[i]);
      cofaces_[p - 1][*index_of(face)].push_back(idx);
    }
  }
}

namespace {

std::vector<Simplex> faces_of(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    Simplex face;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != drop) face.push_back(s[i]);
    out.push_back(std::move(face));
  }
  return out;
}

}  // namespace

Incidence incidence(const SimplicialComplex& k, const Simplex& sigma) {
  const auto idx = k.index_of(sigma);
  if (!idx) fail(ErrorKind::Infeasible, "simplex not in complex");
  const int p = static_cast<int>(sigma.size()) - 1;

  Incidence out;
  out.faces = faces_of(sigma);
  for (std::size_t c : k.coface_indices(p, *idx)) out.cofaces.push_back(k.simplices(p + 1)[c]);

  // Candidates sharing a face are cofaces of σ's faces; candidates sharing a
  // coface are faces of σ's cofaces. Classify each by the exclusive-or rule.
  std::vector<std::size_t> share_face;
  for (const Simplex& face : out.faces) {
    const std::size_t fi = *k.index_of(face);
    for (std::size_t c : k.coface_indices(p - 1, fi))
      if (c != *idx) share_face.push_back(c);
  }
  std::vector<std::size_t> share_coface;
  for (const Simplex& coface : out.cofaces) {
    for (const Simplex& f : faces_of(coface)) {
      const std::size_t fi = *k.index_of(f);
      if (fi != *idx) share_coface.push_back(fi);
    }
  }
  std::sort(share_face.begin(), share_face.end());
  share_face.erase(std::unique(share_face.begin(), share_face.end()), share_face.end());
  std::sort(share_coface.begin(), share_coface.end());
  share_coface.erase(std::unique(share_coface.begin(), share_coface.end()), share_coface.end());

  std::vector<std::size_t> exclusive;
  std::set_symmetric_difference(share_face.begin(), share_face.end(), share_coface.begin(),
                                share_coface.end(), std::back_inserter(exclusive));
  for (std::size_t i : exclusive) out.parallel.push_back(k.simplices(p)[i]);
  std::sort(out.parallel.begin(), out.parallel.end());
  std::sort(out.cofaces.begin(), out.cofaces.end());
  return out;
}

namespace {

// Extends `clique` by candidates (all adjacent to every clique member),
// emitting each clique once in increasing-vertex order.
void extend_cliques(const std::vector<std::vector<VertexId>>& higher, Simplex& clique,
                    const std::vector<VertexId>& candidates, std::size_t max_size,
                    SimplicialComplex& out) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const VertexId v = candidates[i];
    clique.push_back(v);
    out.add_simplex(clique, 1.0);
    if (clique.size() < max_size) {
      std::vector<VertexId> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        const VertexId w = candidates[j];
        if (std::binary_search(higher[v].begin(), higher[v].end(), w)) next.push_back(w);
      }
      if (!next.empty()) extend_cliques(higher, clique, next, max_size, out);
    }
    clique.pop_back();
  }
}

}  // namespace

SimplicialComplex clique_complex(const Graph& g, int max_dim) {
  if (max_dim < 1) fail(ErrorKind::Infeasible, "max_dim must be at least 1");
  const std::size_t n = g.vertex_count();
  SimplicialComplex k(n);
  for (VertexId v = 0; v < n; ++v) k.set_weight(Simplex{v}, g.vertex_weight(v));

  // Forward adjacency (neighbors with larger id) makes every clique appear
  // exactly once as an increasing sequence.
  std::vector<std::vector<VertexId>> higher(n);
  for (const Edge& e : g.edges()) higher[e.u].push_back(e.v);
  for (auto& list : higher) std::sort(list.begin(), list.end());

  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  for (VertexId v = 0; v < n; ++v) {
    Simplex clique{v};
    extend_cliques(higher, clique, higher[v], max_size, k);
  }
  for (const Edge& e : g.edges()) k.set_weight(Simplex{e.u, e.v}, e.weight);
  return k;
}

SimplicialComplex vietoris_rips(const DistanceMatrix& d, double eps, int max_dim) {
  return clique_complex(epsilon_graph(d, eps), max_dim);
}

SimplicialComplex vietoris_rips(const PointCloud& cloud, double eps, int max_dim) {
  return clique_complex(epsilon_graph(cloud, eps), max_dim);
}

void apply_simplex_weights(SimplicialComplex& k, const Graph& g, std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty()) continue;
    const std::string where = "weight file line " + std::to_string(line_no);
    if (fields.size() < 2) fail(ErrorKind::Parse, where + ": expected 'v1 ... vk w'");
    double w = 0.0;
    const auto& wf = fields.back();
    const auto [ptr, ec] = std::from_chars(wf.data(), wf.data() + wf.size(), w);
    if (ec != std::errc{} || ptr != wf.data() + wf.size())
      fail(ErrorKind::Parse, where + ": bad weight");
    Simplex s;
    for (std::size_t f = 0; f + 1 < fields.size(); ++f) {
      auto v = g.find_vertex(fields[f]);
      if (!v) fail(ErrorKind::Parse, where + ": unknown vertex " + std::string(fields[f]));
      s.push_back(*v);
    }
    std::sort(s.begin(), s.end());
    if (!k.contains(s)) fail(ErrorKind::Infeasible, where + ": simplex not in complex");
    k.set_weight(s, w);
  }
}

}  // namespace curvekit
