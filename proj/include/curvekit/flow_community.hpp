#pragma once

// Discrete Ricci flow on edge weights and the two curvature-driven community
// detectors built on Ollivier curvature: flow + surgery, and incremental
// deletion of negatively curved edges.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "curvekit/graph.hpp"

namespace curvekit {

struct FlowState {
  Graph graph;                                   // topology with the current weights
  std::size_t iteration = 0;
  double weight_floor = 0.0;                     // 1e-6 × initial mean weight
  std::vector<std::vector<double>> curvature;    // per step, indexed by EdgeId
  std::vector<std::vector<double>> weight_trace; // weights after each step
  DistanceMatrix distances;                      // for the current weights

  std::span<const Edge> edges() const { return graph.edges(); }
  double weight(EdgeId e) const { return graph.edge(e).weight; }
};

inline constexpr double kWeightFloorFraction = 1e-6;
inline constexpr std::size_t kDefaultFlowIterations = 20;

FlowState initial_flow_state(const Graph& g);

// w_e <- d(u, v) · (1 - κ_O(u, v)), floored; distances recomputed afterwards.
FlowState ricci_flow_step(FlowState state, double alpha);

FlowState ricci_flow(const Graph& g, std::size_t iterations, double alpha);

struct CommunityAssignment {
  std::vector<std::size_t> labels;  // by VertexId; labels numbered by smallest member
  std::string method;
  std::vector<std::pair<std::string, std::string>> parameters;

  std::size_t community_count() const;
};

// Drops edges heavier than `threshold`; communities are the remaining components.
CommunityAssignment surgery(const FlowState& state, double threshold);

double median_weight(const FlowState& state);

struct ThresholdSweepPoint {
  double threshold;
  std::size_t communities;
};

// Community counts at each distinct flowed weight used as a threshold.
std::vector<ThresholdSweepPoint> threshold_sweep(const FlowState& state);

enum class RecomputeRadius { TwoHop, Exact };

struct DeletionResult {
  CommunityAssignment communities;
  std::vector<std::pair<VertexId, VertexId>> removed;  // in removal order
};

// Repeatedly removes the most negatively curved edge (ties: smallest endpoint
// pair), refreshing curvature near the removed edge (or everywhere in exact
// mode) until no edge has negative curvature.
DeletionResult delete_negative_communities(const Graph& g, double alpha, RecomputeRadius radius);

}  // namespace curvekit
