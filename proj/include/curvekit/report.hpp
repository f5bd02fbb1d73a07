#pragma once

// Curvature values keyed by geometric object, with the model and parameter
// record that produced them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvekit/graph.hpp"

namespace curvekit {

enum class ObjectKind { Vertex, Edge, Simplex, Triple };

std::string_view object_kind_name(ObjectKind kind);

struct CurvatureEntry {
  std::vector<VertexId> key;  // sorted vertex ids of the object
  double value;
};

struct CurvatureReport {
  std::string model;
  std::vector<std::pair<std::string, std::string>> parameters;  // insertion order is kept
  ObjectKind kind = ObjectKind::Edge;
  std::vector<CurvatureEntry> values;

  void add(std::vector<VertexId> key, double value);
  std::optional<double> find(std::vector<VertexId> key) const;

  // "name=value;name=value" in insertion order.
  std::string parameter_string() const;
};

// Shortest round-trip decimal text for a double; "inf" / "-inf" / "nan".
std::string format_real(double value);

}  // namespace curvekit
