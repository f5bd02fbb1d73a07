#include "curvekit/vertex_curvature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "curvekit/edge_curvature.hpp"
#include "curvekit/error.hpp"
#include "curvekit/parallel.hpp"

namespace curvekit {

namespace {

constexpr double kKernelThreshold = 1e-10;    // relative to the largest Γ eigenvalue
constexpr double kNegativityTolerance = 1e-9;

// Column vector of the Laplacian at x: Δf(x) = row · f.
Eigen::VectorXd laplacian_row(const Graph& g, VertexId x, const std::vector<int>& local,
                              Eigen::Index size) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(size);
  for (const Neighbor& nb : g.neighbors(x)) {
    row(local[nb.vertex]) += 1.0;
    row(local[x]) -= 1.0;
  }
  return row;
}

Eigen::MatrixXd gamma_matrix(const Graph& g, VertexId x, const std::vector<int>& local,
                             Eigen::Index size) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  const int ix = local[x];
  for (const Neighbor& nb : g.neighbors(x)) {
    const int iy = local[nb.vertex];
    m(iy, iy) += 0.5;
    m(ix, ix) += 0.5;
    m(ix, iy) -= 0.5;
    m(iy, ix) -= 0.5;
  }
  return m;
}

}  // namespace

QuadraticFormPair bakry_emery_forms(const Graph& g, VertexId v) {
  const PuncturedBall ball = punctured_two_ball(g, v);
  QuadraticFormPair forms;
  forms.basis.push_back(v);
  forms.basis.insert(forms.basis.end(), ball.sphere1.begin(), ball.sphere1.end());
  forms.basis.insert(forms.basis.end(), ball.sphere2.begin(), ball.sphere2.end());

  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < forms.basis.size(); ++i) local[forms.basis[i]] = static_cast<int>(i);
  const auto size = static_cast<Eigen::Index>(forms.basis.size());

  // Γ(f)(v) = ½ Σ_{y~v} (f_y - f_v)²
  forms.gamma = gamma_matrix(g, v, local, size);

  // Γ₂(f)(v) = ½ Σ_{y~v} (Γ(f)(y) - Γ(f)(v)) - ½ Σ_{y~v} (f_y - f_v)(Δf(y) - Δf(v))
  // Only S1 neighborhoods enter, so S2–S2 edges never contribute.
  const Eigen::VectorXd lap_v = laplacian_row(g, v, local, size);
  Eigen::MatrixXd half_laplacian_of_gamma = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(size, size);
  for (const Neighbor& nb : g.neighbors(v)) {
    const VertexId y = nb.vertex;
    half_laplacian_of_gamma += 0.5 * (gamma_matrix(g, y, local, size) - forms.gamma);
    Eigen::VectorXd diff = Eigen::VectorXd::Zero(size);
    diff(local[y]) += 1.0;
    diff(local[v]) -= 1.0;
    cross += 0.5 * diff * (laplacian_row(g, y, local, size) - lap_v).transpose();
  }
  forms.gamma2 = half_laplacian_of_gamma - 0.5 * (cross + cross.transpose());
  return forms;
}

double bakry_emery(const Graph& g, VertexId v) {
  if (g.degree(v) == 0)
    fail(ErrorKind::Infeasible, "Bakry-Emery curvature undefined at isolated vertex " + g.name(v));
  const QuadraticFormPair forms = bakry_emery_forms(g, v);

  // Both forms vanish on constants; pin f(v) = 0 by dropping the center.
  const Eigen::Index n = forms.gamma.rows() - 1;
  const Eigen::MatrixXd gamma = forms.gamma.bottomRightCorner(n, n);
  const Eigen::MatrixXd gamma2 = forms.gamma2.bottomRightCorner(n, n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gamma_eig(gamma);
  if (gamma_eig.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigen-decomposition failed");
  const Eigen::VectorXd lambda = gamma_eig.eigenvalues();
  const double cutoff = kKernelThreshold * lambda.maxCoeff();
  std::vector<Eigen::Index> range_cols;
  std::vector<Eigen::Index> kernel_cols;
  for (Eigen::Index i = 0; i < n; ++i) (lambda(i) > cutoff ? range_cols : kernel_cols).push_back(i);

  const Eigen::MatrixXd& vectors = gamma_eig.eigenvectors();
  Eigen::MatrixXd range(n, static_cast<Eigen::Index>(range_cols.size()));
  for (std::size_t c = 0; c < range_cols.size(); ++c) range.col(c) = vectors.col(range_cols[c]);
  Eigen::MatrixXd kernel(n, static_cast<Eigen::Index>(kernel_cols.size()));
  for (std::size_t c = 0; c < kernel_cols.size(); ++c) kernel.col(c) = vectors.col(kernel_cols[c]);

  Eigen::MatrixXd reduced = range.transpose() * gamma2 * range;
  if (kernel.cols() > 0) {
    // Minimizing over the kernel component first leaves the Schur complement
    // of the kernel block; Γ₂ must be PSD there and the coupling must lie in
    // its range, otherwise the quotient is unbounded below.
    const Eigen::MatrixXd block = kernel.transpose() * gamma2 * kernel;
    const Eigen::MatrixXd coupling = range.transpose() * gamma2 * kernel;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> block_eig(block);
    const Eigen::VectorXd mu = block_eig.eigenvalues();
    const double scale = std::max(1.0, gamma2.cwiseAbs().maxCoeff());
    if (mu.minCoeff() < -kNegativityTolerance * scale) return -std::numeric_limits<double>::infinity();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      if (mu(i) > kKernelThreshold * scale) {
        inv(i) = 1.0 / mu(i);
      } else {
        const double leak = (coupling * block_eig.eigenvectors().col(i)).norm();
        if (leak > 1e-9 * scale) return -std::numeric_limits<double>::infinity();
      }
    }
    const Eigen::MatrixXd pinv =
        block_eig.eigenvectors() * inv.asDiagonal() * block_eig.eigenvectors().transpose();
    reduced -= coupling * pinv * coupling.transpose();
  }

  Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(range_cols.size()));
  for (std::size_t c = 0; c < range_cols.size(); ++c)
    inv_sqrt(c) = 1.0 / std::sqrt(lambda(range_cols[c]));
  Eigen::MatrixXd normalized = inv_sqrt.asDiagonal() * reduced * inv_sqrt.asDiagonal();
  normalized = 0.5 * (normalized + normalized.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> final_eig(normalized, Eigen::EigenvaluesOnly);
  if (final_eig.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigen-decomposition failed");
  return final_eig.eigenvalues().minCoeff();
}

ResistanceCalculator::ResistanceCalculator(const Graph& g) {
  constexpr std::size_t kGround = std::numeric_limits<std::size_t>::max();
  component_ = connected_components(g);
  component_count_ = 0;
  for (std::size_t c : component_) component_count_ = std::max(component_count_, c + 1);

  local_.assign(g.vertex_count(), kGround);
  std::vector<std::vector<VertexId>> members(component_count_);
  for (VertexId v = 0; v < g.vertex_count(); ++v) members[component_[v]].push_back(v);

  inverse_.resize(component_count_);
  for (std::size_t c = 0; c < component_count_; ++c) {
    // Ground the first member; the remaining vertices index the system.
    const auto& list = members[c];
    for (std::size_t i = 1; i < list.size(); ++i) local_[list[i]] = i - 1;
    const auto size = static_cast<Eigen::Index>(list.size() - 1);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t i = 1; i < list.size(); ++i) {
      const VertexId v = list[i];
      const auto iv = static_cast<Eigen::Index>(local_[v]);
      for (const Neighbor& nb : g.neighbors(v)) {
        const double w = g.edge(nb.edge).weight;
        lap(iv, iv) += w;
        if (local_[nb.vertex] != kGround) lap(iv, static_cast<Eigen::Index>(local_[nb.vertex])) -= w;
      }
    }
    if (size > 0) {
      Eigen::LDLT<Eigen::MatrixXd> ldlt(lap);
      if (ldlt.info() != Eigen::Success) fail(ErrorKind::Numerical, "Laplacian factorization failed");
      inverse_[c] = ldlt.solve(Eigen::MatrixXd::Identity(size, size));
    }
  }
}

double ResistanceCalculator::operator()(VertexId i, VertexId j) const {
  constexpr std::size_t kGround = std::numeric_limits<std::size_t>::max();
  if (component_[i] != component_[j])
    fail(ErrorKind::Infeasible, "effective resistance between different components");
  if (i == j) return 0.0;
  const Eigen::MatrixXd& inv = inverse_[component_[i]];
  const std::size_t a = local_[i];
  const std::size_t b = local_[j];
  double value = 0.0;
  if (a != kGround) value += inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
  if (b != kGround) value += inv(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
  if (a != kGround && b != kGround)
    value -= 2.0 * inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return value;
}

double effective_resistance(const Graph& g, VertexId i, VertexId j) {
  return ResistanceCalculator(g)(i, j);
}

namespace {

double resistance_vertex_with(const Graph& g, VertexId v, const ResistanceCalculator& omega) {
  double relative = 0.0;
  for (const Neighbor& nb : g.neighbors(v)) relative += omega(v, nb.vertex) * g.edge(nb.edge).weight;
  return 1.0 - 0.5 * relative;
}

void require_connected(const ResistanceCalculator& omega) {
  if (!omega.connected()) fail(ErrorKind::Infeasible, "resistance curvature needs a connected graph");
}

double resistance_edge_with(const Graph& g, EdgeId e, ResistanceDenominator denominator,
                            const ResistanceCalculator& omega, std::span<const double> vertex) {
  const Edge& edge = g.edge(e);
  const double scale =
      denominator == ResistanceDenominator::Weight ? edge.weight : omega(edge.u, edge.v);
  return 2.0 * (vertex[edge.u] + vertex[edge.v]) / scale;
}

}  // namespace

double resistance_vertex(const Graph& g, VertexId v) {
  const ResistanceCalculator omega(g);
  require_connected(omega);
  return resistance_vertex_with(g, v, omega);
}

double resistance_edge(const Graph& g, EdgeId e, ResistanceDenominator denominator) {
  const ResistanceCalculator omega(g);
  require_connected(omega);
  const Edge& edge = g.edge(e);
  std::vector<double> vertex(g.vertex_count(), 0.0);
  vertex[edge.u] = resistance_vertex_with(g, edge.u, omega);
  vertex[edge.v] = resistance_vertex_with(g, edge.v, omega);
  return resistance_edge_with(g, e, denominator, omega, vertex);
}

double scalar_from_edges(const Graph& g, VertexId v, const CurvatureReport& edge_values) {
  if (g.degree(v) == 0) fail(ErrorKind::Infeasible, "scalar curvature undefined at isolated vertex");
  double total = 0.0;
  for (const Neighbor& nb : g.neighbors(v)) {
    const auto value = edge_values.find({v, nb.vertex});
    if (!value) fail(ErrorKind::Infeasible, "missing edge curvature at " + g.name(v));
    total += *value;
  }
  return total / static_cast<double>(g.degree(v));
}

double scalar_orc(const Graph& g, VertexId v, double alpha, const DistanceMatrix& d) {
  if (g.degree(v) == 0) fail(ErrorKind::Infeasible, "scalar curvature undefined at isolated vertex");
  double total = 0.0;
  for (const Neighbor& nb : g.neighbors(v)) {
    const double w = g.edge(nb.edge).weight;
    total += w * w * ollivier_edge(g, nb.edge, alpha, d);
  }
  return total / static_cast<double>(g.degree(v));
}

double scalar_orc(const Graph& g, VertexId v, double alpha) {
  return scalar_orc(g, v, alpha, shortest_paths(g));
}

CurvatureReport bakry_emery_report(const Graph& g) {
  CurvatureReport report;
  report.model = "bakry-emery";
  report.parameters = {{"dimension", "inf"}};
  report.kind = ObjectKind::Vertex;
  std::vector<double> values(g.vertex_count());
  parallel_for(g.vertex_count(), [&](std::size_t v) {
    if (g.degree(static_cast<VertexId>(v)) > 0) values[v] = bakry_emery(g, static_cast<VertexId>(v));
  });
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 0) report.add({v}, values[v]);
  return report;
}

CurvatureReport resistance_vertex_report(const Graph& g) {
  CurvatureReport report;
  report.model = "resistance";
  report.kind = ObjectKind::Vertex;
  const ResistanceCalculator omega(g);
  require_connected(omega);
  for (VertexId v = 0; v < g.vertex_count(); ++v) report.add({v}, resistance_vertex_with(g, v, omega));
  return report;
}

CurvatureReport resistance_edge_report(const Graph& g, ResistanceDenominator denominator) {
  CurvatureReport report;
  report.model = "resistance-edge";
  report.parameters = {
      {"denominator",
       denominator == ResistanceDenominator::Weight ? "weight" : "effective-resistance"}};
  report.kind = ObjectKind::Edge;
  const ResistanceCalculator omega(g);
  require_connected(omega);
  std::vector<double> vertex(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) vertex[v] = resistance_vertex_with(g, v, omega);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    report.add({g.edge(e).u, g.edge(e).v}, resistance_edge_with(g, e, denominator, omega, vertex));
  return report;
}

CurvatureReport scalar_from_edges_report(const Graph& g, const CurvatureReport& edge_values) {
  CurvatureReport report;
  report.model = "scalar-" + edge_values.model;
  report.parameters = edge_values.parameters;
  report.kind = ObjectKind::Vertex;
  std::map<std::vector<VertexId>, double> lookup;
  for (const auto& entry : edge_values.values) lookup.emplace(entry.key, entry.value);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    double total = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      auto it = lookup.find({std::min(v, nb.vertex), std::max(v, nb.vertex)});
      if (it == lookup.end()) fail(ErrorKind::Infeasible, "missing edge curvature at " + g.name(v));
      total += it->second;
    }
    report.add({v}, total / static_cast<double>(g.degree(v)));
  }
  return report;
}

CurvatureReport scalar_orc_report(const Graph& g, double alpha) {
  CurvatureReport report;
  report.model = "scalar-orc";
  report.parameters = {{"alpha", format_real(alpha)}};
  report.kind = ObjectKind::Vertex;
  const DistanceMatrix d = shortest_paths(g);
  const auto kappa = ollivier_all(g, alpha, d);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    double total = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      const double w = g.edge(nb.edge).weight;
      total += w * w * kappa[nb.edge];
    }
    report.add({v}, total / static_cast<double>(g.degree(v)));
  }
  return report;
}

}  // namespace curvekit
