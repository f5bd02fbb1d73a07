#include "curvekit/flow_community.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "curvekit/edge_curvature.hpp"
#include "curvekit/error.hpp"
#include "curvekit/report.hpp"

namespace curvekit {

FlowState initial_flow_state(const Graph& g) {
  FlowState state;
  state.graph = g;
  double total = 0.0;
  for (const Edge& e : g.edges()) total += e.weight;
  const double mean = g.edge_count() == 0 ? 1.0 : total / static_cast<double>(g.edge_count());
  state.weight_floor = kWeightFloorFraction * mean;
  state.distances = shortest_paths(g);
  return state;
}

FlowState ricci_flow_step(FlowState state, double alpha) {
  const Graph& g = state.graph;
  const std::vector<double> kappa = ollivier_all(g, alpha, state.distances);
  std::vector<double> next(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const double updated = state.distances(edge.u, edge.v) * (1.0 - kappa[e]);
    next[e] = std::max(updated, state.weight_floor);
  }
  state.graph = g.with_edge_weights(next);
  state.distances = shortest_paths(state.graph);
  state.curvature.push_back(kappa);
  state.weight_trace.push_back(std::move(next));
  ++state.iteration;
  return state;
}

FlowState ricci_flow(const Graph& g, std::size_t iterations, double alpha) {
  if (iterations < 1) fail(ErrorKind::Infeasible, "flow needs at least one iteration");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorKind::Infeasible, "alpha must lie in [0, 1]");
  FlowState state = initial_flow_state(g);
  for (std::size_t i = 0; i < iterations; ++i) state = ricci_flow_step(std::move(state), alpha);
  return state;
}

std::size_t CommunityAssignment::community_count() const {
  std::size_t count = 0;
  for (std::size_t label : labels) count = std::max(count, label + 1);
  return count;
}

namespace {

std::vector<std::size_t> components_below(const Graph& g, double threshold) {
  std::vector<EdgeId> heavy;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).weight > threshold) heavy.push_back(e);
  return connected_components(g.without_edges(heavy));
}

}  // namespace

CommunityAssignment surgery(const FlowState& state, double threshold) {
  CommunityAssignment out;
  out.method = "ricci-flow";
  out.parameters = {{"iterations", std::to_string(state.iteration)},
                    {"threshold", format_real(threshold)}};
  out.labels = components_below(state.graph, threshold);
  return out;
}

double median_weight(const FlowState& state) {
  std::vector<double> w;
  for (const Edge& e : state.edges()) w.push_back(e.weight);
  if (w.empty()) return 0.0;
  std::sort(w.begin(), w.end());
  const std::size_t mid = w.size() / 2;
  return w.size() % 2 == 1 ? w[mid] : 0.5 * (w[mid - 1] + w[mid]);
}

std::vector<ThresholdSweepPoint> threshold_sweep(const FlowState& state) {
  std::set<double> thresholds;
  for (const Edge& e : state.edges()) thresholds.insert(e.weight);
  std::vector<ThresholdSweepPoint> out;
  for (double t : thresholds) {
    const auto labels = components_below(state.graph, t);
    std::size_t count = 0;
    for (std::size_t l : labels) count = std::max(count, l + 1);
    out.push_back({t, count});
  }
  return out;
}

namespace {

constexpr double kNegativeTolerance = 1e-12;

}  // namespace

DeletionResult delete_negative_communities(const Graph& g, double alpha, RecomputeRadius radius) {
  DeletionResult result;
  std::vector<char> alive(g.edge_count(), 1);
  std::vector<double> kappa(g.edge_count(), 0.0);
  std::vector<char> stale(g.edge_count(), 1);
  std::vector<EdgeId> removed_ids;

  for (std::size_t round = 0; round <= g.edge_count(); ++round) {
    const Graph live = g.without_edges(removed_ids);
    const DistanceMatrix d = shortest_paths(live);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!alive[e] || !stale[e]) continue;
      const Edge& edge = g.edge(e);
      kappa[e] = ollivier_edge(live, *live.find_edge(edge.u, edge.v), alpha, d);
      stale[e] = 0;
    }

    std::size_t worst = g.edge_count();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!alive[e] || kappa[e] >= -kNegativeTolerance) continue;
      if (worst == g.edge_count()) {
        worst = e;
        continue;
      }
      const double gap = kappa[e] - kappa[worst];
      const bool tie = std::abs(gap) <= kNegativeTolerance;
      const auto key = std::pair(g.edge(e).u, g.edge(e).v);
      const auto best_key = std::pair(g.edge(worst).u, g.edge(worst).v);
      if ((tie && key < best_key) || (!tie && gap < 0.0)) worst = e;
    }
    if (worst == g.edge_count()) break;

    const Edge& cut = g.edge(static_cast<EdgeId>(worst));
    result.removed.emplace_back(cut.u, cut.v);
    alive[worst] = 0;
    removed_ids.push_back(static_cast<EdgeId>(worst));

    if (radius == RecomputeRadius::Exact) {
      std::fill(stale.begin(), stale.end(), 1);
    } else {
      // Hop distances in the graph before removal bound where the measures
      // or their local distances can have changed.
      const auto from_u = hops_from(live, cut.u);
      const auto from_v = hops_from(live, cut.v);
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        const double near = std::min({from_u[edge.u], from_u[edge.v], from_v[edge.u], from_v[edge.v]});
        if (near <= 2.0) stale[e] = 1;
      }
    }
  }

  result.communities.method = "delete-negative";
  result.communities.parameters = {
      {"alpha", format_real(alpha)},
      {"recompute", radius == RecomputeRadius::Exact ? "exact" : "2-hop"}};
  result.communities.labels = connected_components(g.without_edges(removed_ids));
  return result;
}

}  // namespace curvekit
