#include "curvekit/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvekit/error.hpp"

namespace curvekit {

namespace {
constexpr double kMassTolerance = 1e-9;
constexpr double kReducedCostTolerance = 1e-12;
}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<WeightedVertex> support) : support_(std::move(support)) {
  std::sort(support_.begin(), support_.end(),
            [](const WeightedVertex& a, const WeightedVertex& b) { return a.vertex < b.vertex; });
  double total = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!(support_[i].mass >= 0.0)) fail(ErrorKind::Infeasible, "negative mass in measure");
    if (i > 0 && support_[i].vertex == support_[i - 1].vertex)
      fail(ErrorKind::Infeasible, "repeated vertex in measure support");
    total += support_[i].mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    fail(ErrorKind::Infeasible, "measure masses sum to " + std::to_string(total));
}

double DiscreteMeasure::mass(VertexId v) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), v,
                             [](const WeightedVertex& a, VertexId x) { return a.vertex < x; });
  return (it != support_.end() && it->vertex == v) ? it->mass : 0.0;
}

DiscreteMeasure lazy_measure(const Graph& g, VertexId v, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorKind::Infeasible, "alpha must lie in [0, 1]");
  const std::size_t deg = g.degree(v);
  if (deg == 0) fail(ErrorKind::Infeasible, "lazy measure of isolated vertex " + g.name(v));
  std::vector<WeightedVertex> support;
  support.reserve(deg + 1);
  support.push_back({v, alpha});
  const double share = (1.0 - alpha) / static_cast<double>(deg);
  for (const Neighbor& nb : g.neighbors(v)) support.push_back({nb.vertex, share});
  return DiscreteMeasure(std::move(support));
}

double transport_cost(std::span<const double> supply, std::span<const double> demand,
                      std::span<const double> cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (m == 0 || n == 0) return 0.0;
  if (cost.size() != m * n) fail(ErrorKind::Infeasible, "cost matrix has the wrong shape");

  double scale = 1.0;
  for (double c : cost) scale = std::max(scale, std::abs(c));
  const double tolerance = kReducedCostTolerance * scale;

  std::vector<double> flow(m * n, 0.0);
  std::vector<char> basic(m * n, 0);

  // North-west corner start. When a row and a column run out together only
  // the row advances, so the next (zero) allocation keeps m + n - 1 basic
  // cells forming a spanning tree.
  {
    std::vector<double> a(supply.begin(), supply.end());
    std::vector<double> b(demand.begin(), demand.end());
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      const double x = std::min(a[i], b[j]);
      flow[i * n + j] = x;
      basic[i * n + j] = 1;
      a[i] -= x;
      b[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (j == n - 1 || (i < m - 1 && a[i] <= b[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Tree nodes: rows 0..m-1, columns m..m+n-1.
  const std::size_t nodes = m + n;
  std::vector<double> potential(nodes);
  std::vector<std::vector<std::size_t>> tree(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<std::size_t> order;
  order.reserve(nodes);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  auto other_end = [&](std::size_t node, std::size_t cell) {
    return node < m ? m + cell % n : cell / n;
  };
  auto rebuild_tree = [&] {
    for (auto& list : tree) list.clear();
    for (std::size_t c = 0; c < m * n; ++c) {
      if (!basic[c]) continue;
      tree[c / n].push_back(c);
      tree[m + c % n].push_back(c);
    }
  };
  // Breadth-first from `root`, filling parent (as the connecting cell) and
  // potentials with u_i + v_j = c_ij on basic cells.
  auto walk = [&](std::size_t root) {
    std::fill(parent.begin(), parent.end(), kNone);
    order.clear();
    order.push_back(root);
    parent[root] = root;
    potential[root] = 0.0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::size_t node = order[head];
      for (std::size_t cell : tree[node]) {
        const std::size_t next = other_end(node, cell);
        if (parent[next] != kNone) continue;
        parent[next] = cell;
        potential[next] = cost[cell] - potential[node];
        order.push_back(next);
      }
    }
    if (order.size() != nodes) fail(ErrorKind::Numerical, "transport basis is not a spanning tree");
  };

  const std::size_t max_pivots = 1000 + 50 * m * n;
  for (std::size_t pivot = 0;; ++pivot) {
    if (pivot > max_pivots) fail(ErrorKind::Numerical, "transport simplex did not terminate");
    rebuild_tree();
    walk(0);

    // Bland: lowest-index improving cell enters.
    std::size_t entering = kNone;
    for (std::size_t c = 0; c < m * n; ++c) {
      if (basic[c]) continue;
      const double reduced = cost[c] - potential[c / n] - potential[m + c % n];
      if (reduced < -tolerance) {
        entering = c;
        break;
      }
    }
    if (entering == kNone) break;

    // Cycle: entering cell plus the tree path from its column back to its row.
    const std::size_t row = entering / n;
    const std::size_t col = m + entering % n;
    walk(row);
    std::vector<std::size_t> path;  // cells from col toward row
    for (std::size_t node = col; node != row;) {
      const std::size_t cell = parent[node];
      path.push_back(cell);
      node = other_end(node, cell);
    }
    // Cells at even positions of `path` lose flow.
    std::size_t leaving = kNone;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const std::size_t c = path[k];
      if (flow[c] < theta || (flow[c] == theta && c < leaving)) {
        theta = flow[c];
        leaving = c;
      }
    }
    if (leaving == kNone) fail(ErrorKind::Numerical, "transport cycle has no leaving cell");
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0) {
        flow[path[k]] -= theta;
      } else {
        flow[path[k]] += theta;
      }
    }
    flow[entering] = theta;
    flow[leaving] = 0.0;
    basic[entering] = 1;
    basic[leaving] = 0;
  }

  double total = 0.0;
  for (std::size_t c = 0; c < m * n; ++c)
    if (basic[c] && flow[c] > 0.0) total += flow[c] * cost[c];
  return total;
}

double wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DistanceMatrix& d) {
  // Mass common to both measures stays put at zero cost (d is a metric), so
  // only the residuals, which have disjoint supports, are transported.
  std::vector<WeightedVertex> from;
  std::vector<WeightedVertex> to;
  double from_total = 0.0;
  double to_total = 0.0;
  for (const WeightedVertex& w : mu.support()) {
    const double residual = w.mass - std::min(w.mass, nu.mass(w.vertex));
    if (residual > 0.0) {
      from.push_back({w.vertex, residual});
      from_total += residual;
    }
  }
  for (const WeightedVertex& w : nu.support()) {
    const double residual = w.mass - std::min(w.mass, mu.mass(w.vertex));
    if (residual > 0.0) {
      to.push_back({w.vertex, residual});
      to_total += residual;
    }
  }
  if (std::abs(from_total - to_total) > kMassTolerance)
    fail(ErrorKind::Infeasible, "measures have different total mass");
  if (from.empty() || to.empty()) return 0.0;

  std::vector<double> supply;
  std::vector<double> demand;
  std::vector<double> cost;
  for (const auto& w : from) supply.push_back(w.mass);
  for (const auto& w : to) demand.push_back(w.mass);
  cost.reserve(from.size() * to.size());
  for (const auto& a : from) {
    for (const auto& b : to) {
      const double dist = d(a.vertex, b.vertex);
      if (!std::isfinite(dist))
        fail(ErrorKind::Infeasible, "measures are supported on different components");
      cost.push_back(dist);
    }
  }
  return transport_cost(supply, demand, cost);
}

}  // namespace curvekit
