#include "curvekit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace curvekit {

std::string_view object_kind_name(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Vertex:
      return "vertex";
    case ObjectKind::Edge:
      return "edge";
    case ObjectKind::Simplex:
      return "simplex";
    case ObjectKind::Triple:
      return "triple";
  }
  return "unknown";
}

void CurvatureReport::add(std::vector<VertexId> key, double value) {
  std::sort(key.begin(), key.end());
  values.push_back({std::move(key), value});
}

std::optional<double> CurvatureReport::find(std::vector<VertexId> key) const {
  std::sort(key.begin(), key.end());
  for (const auto& entry : values)
    if (entry.key == key) return entry.value;
  return std::nullopt;
}

std::string CurvatureReport::parameter_string() const {
  std::string out;
  for (const auto& [name, value] : parameters) {
    if (!out.empty()) out += ';';
    out += name;
    out += '=';
    out += value;
  }
  return out;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace curvekit
