#pragma once

// Finitely supported vertex measures and exact Wasserstein-1 distance.

#include <cstddef>
#include <span>
#include <vector>

#include "curvekit/graph.hpp"

namespace curvekit {

struct WeightedVertex {
  VertexId vertex;
  double mass;
};

// Probability measure with nonnegative masses summing to 1 (within 1e-9).
// Support entries are unique and sorted by vertex.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<WeightedVertex> support);

  std::span<const WeightedVertex> support() const { return support_; }
  double mass(VertexId v) const;

 private:
  std::vector<WeightedVertex> support_;
};

// Mass alpha at v, (1 - alpha) / deg(v) on each neighbor.
DiscreteMeasure lazy_measure(const Graph& g, VertexId v, double alpha);

// Exact optimal value of the transport problem between two balanced mass
// vectors under `cost` (rows = supply, cols = demand, row-major).
// Transportation simplex with Bland's entering/leaving rule.
double transport_cost(std::span<const double> supply, std::span<const double> demand,
                      std::span<const double> cost);

// W1(mu, nu) under the ground metric d. Throws when a pair of support points
// is disconnected or the total masses differ.
double wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DistanceMatrix& d);

}  // namespace curvekit
