#pragma once

// Command-line surface: curvature, communities, flow, scalar-cloud, complex.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace curvekit::cli {

enum class InputKind { Edges, Points, Distances, Simplices };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;
  std::string input;
  InputKind input_kind = InputKind::Edges;
  double eps = 0.0;  // points / distances -> ε-graph or Vietoris–Rips

  std::vector<std::string> models{"forman"};
  double alpha = 0.5;
  bool hop_metric = false;
  int max_dim = 2;
  std::optional<int> dim;  // complex: report only this dimension
  bool weighted = false;
  std::string simplex_weights;
  int max_len = 4;
  std::string denominator = "effective-resistance";
  std::size_t samples = 10000;
  std::uint64_t seed = 0x5eed;

  std::string method = "ricci-flow";
  std::size_t iters = 20;
  std::string threshold = "auto";  // auto (4 x median), sweep, or a number
  std::string recompute = "2-hop";
  std::string sweep_output;

  std::string radii = "auto";
  int n = 0;

  std::string output;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;
};

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kInfeasible = 3,
  kNumerical = 4,
};

// Executes a configured command; diagnostics go to `diag` as "curvekit: <kind>: <message>".
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Parses argv and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& diag);

}  // namespace curvekit::cli
