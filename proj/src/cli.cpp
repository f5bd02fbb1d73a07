#include "curvekit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "curvekit/complex.hpp"
#include "curvekit/edge_curvature.hpp"
#include "curvekit/error.hpp"
#include "curvekit/flow_community.hpp"
#include "curvekit/metric_curvature.hpp"
#include "curvekit/pointcloud.hpp"
#include "curvekit/pointcloud_scalar.hpp"
#include "curvekit/report.hpp"
#include "curvekit/vertex_curvature.hpp"

namespace curvekit::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Graph load_input_graph(const RunConfig& config) {
  const std::string text = read_file(config.input);
  switch (config.input_kind) {
    case InputKind::Edges:
      return load_graph(text);
    case InputKind::Points:
      if (!(config.eps > 0.0)) fail(ErrorKind::Infeasible, "--eps must be positive for point input");
      return epsilon_graph(parse_point_csv(text), config.eps);
    case InputKind::Distances:
      if (!(config.eps > 0.0)) fail(ErrorKind::Infeasible, "--eps must be positive for distance input");
      return epsilon_graph(parse_distance_csv(text), config.eps);
    case InputKind::Simplices:
      break;
  }
  fail(ErrorKind::Infeasible, "this command does not accept a simplex list");
}

std::string object_label(const Graph& g, const std::vector<VertexId>& key) {
  std::string out;
  for (VertexId v : key) {
    if (!out.empty()) out += ' ';
    out += g.name(v);
  }
  return out;
}

// Output sink: the named file, or `fallback` when no path was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) fail(ErrorKind::Infeasible, "cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void write_reports(const Graph& g, const std::vector<CurvatureReport>& reports, const RunConfig& config,
                   std::ostream& out) {
  if (config.format == OutputFormat::Json) {
    ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = config.command;
    doc["reports"] = ordered_json::array();
    for (const auto& report : reports) {
      ordered_json r;
      r["model"] = report.model;
      r["parameters"] = ordered_json::object();
      for (const auto& [k, v] : report.parameters) r["parameters"][k] = v;
      r["kind"] = std::string(object_kind_name(report.kind));
      r["values"] = ordered_json::array();
      for (const auto& entry : report.values) {
        ordered_json names = ordered_json::array();
        for (VertexId v : entry.key) names.push_back(g.name(v));
        // Non-finite values (Bakry–Émery -inf) are emitted as strings.
        ordered_json value = std::isfinite(entry.value) ? ordered_json(entry.value)
                                                        : ordered_json(format_real(entry.value));
        r["values"].push_back({{"object", names}, {"value", value}});
      }
      doc["reports"].push_back(std::move(r));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "model,parameters,kind,object,value\n";
  for (const auto& report : reports) {
    const std::string params = report.parameter_string();
    const std::string_view kind = object_kind_name(report.kind);
    for (const auto& entry : report.values)
      out << report.model << ',' << params << ',' << kind << ',' << object_label(g, entry.key) << ','
          << format_real(entry.value) << '\n';
  }
}

// One row per object, one column per model (header "model[parameters]").
void write_wide(const Graph& g, const std::vector<CurvatureReport>& reports, std::ostream& out) {
  out << "kind,object";
  for (const auto& report : reports) out << ',' << report.model << '[' << report.parameter_string() << ']';
  out << '\n';
  std::vector<std::map<std::vector<VertexId>, double>> lookup(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (const auto& entry : reports[i].values) lookup[i].emplace(entry.key, entry.value);

  auto emit = [&](ObjectKind kind, const std::vector<VertexId>& key) {
    out << object_kind_name(kind) << ',' << object_label(g, key);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out << ',';
      if (reports[i].kind != kind) continue;
      auto it = lookup[i].find(key);
      if (it != lookup[i].end()) out << format_real(it->second);
    }
    out << '\n';
  };
  for (const Edge& e : g.edges()) emit(ObjectKind::Edge, {e.u, e.v});
  for (VertexId v = 0; v < g.vertex_count(); ++v) emit(ObjectKind::Vertex, {v});
}

const std::vector<std::string>& all_models() {
  static const std::vector<std::string> models{
      "forman",         "ollivier",     "menger",           "haantjes",         "resistance-edge",
      "sectional-edge", "bakry-emery",  "resistance",       "sectional-vertex", "scalar-forman",
      "scalar-ollivier", "scalar-orc"};
  return models;
}

CurvatureReport compute_model(const Graph& g, const std::string& model, const RunConfig& config) {
  const TripleSampling sampling{kExhaustiveTripleLimit, config.samples, config.seed};
  const GroundMetric metric = config.hop_metric ? GroundMetric::Hops : GroundMetric::Weighted;
  const auto denominator = config.denominator == "weight" ? ResistanceDenominator::Weight
                                                          : ResistanceDenominator::EffectiveResistance;
  if (model == "forman") return forman_report(g);
  if (model == "ollivier") return ollivier_report(g, config.alpha, metric);
  if (model == "bakry-emery") return bakry_emery_report(g);
  if (model == "resistance") return resistance_vertex_report(g);
  if (model == "resistance-edge") return resistance_edge_report(g, denominator);
  if (model == "sectional-edge") return sectional_edge_report(g, sampling);
  if (model == "sectional-vertex") return sectional_vertex_report(g, sampling);
  if (model == "menger") return menger_report(g);
  if (model == "haantjes") return haantjes_report(g, config.max_len);
  if (model == "scalar-forman") return scalar_from_edges_report(g, forman_report(g));
  if (model == "scalar-ollivier")
    return scalar_from_edges_report(g, ollivier_report(g, config.alpha, metric));
  if (model == "scalar-orc") return scalar_orc_report(g, config.alpha);
  fail(ErrorKind::Infeasible, "unknown model '" + model + "'");
}

void run_curvature(const RunConfig& config, std::ostream& stdout_stream) {
  const Graph g = load_input_graph(config);
  const bool wide = std::find(config.models.begin(), config.models.end(), "all") != config.models.end();
  std::vector<CurvatureReport> reports;
  if (wide) {
    const bool connected = [&] {
      const auto labels = connected_components(g);
      return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
    }();
    for (const auto& model : all_models()) {
      // Resistance curvature is only defined on connected graphs.
      if (!connected && (model == "resistance" || model == "resistance-edge")) continue;
      reports.push_back(compute_model(g, model, config));
    }
  } else {
    for (const auto& model : config.models) reports.push_back(compute_model(g, model, config));
  }
  Sink sink(config.output, stdout_stream);
  if (wide && config.format == OutputFormat::Csv) {
    write_wide(g, reports, *sink);
  } else {
    write_reports(g, reports, config, *sink);
  }
}

std::string sweep_path(const RunConfig& config) {
  if (!config.sweep_output.empty()) return config.sweep_output;
  if (config.output.empty()) return "threshold_sweep.json";
  std::string base = config.output;
  if (auto dot = base.rfind('.'); dot != std::string::npos && base.find('/', dot) == std::string::npos)
    base.resize(dot);
  return base + ".sweep.json";
}

void write_partition(const Graph& g, const CommunityAssignment& c, std::ostream& out) {
  std::string params;
  for (const auto& [k, v] : c.parameters) params += (params.empty() ? "" : ";") + k + "=" + v;
  out << "# method=" << c.method << ' ' << params << '\n';
  out << "vertex,label\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << g.name(v) << ',' << c.labels[v] << '\n';
}

void run_communities(const RunConfig& config, std::ostream& stdout_stream) {
  const Graph g = load_input_graph(config);
  CommunityAssignment communities;
  if (config.method == "delete-negative") {
    RecomputeRadius radius = RecomputeRadius::TwoHop;
    if (config.recompute == "exact") {
      radius = RecomputeRadius::Exact;
    } else if (config.recompute != "2-hop") {
      fail(ErrorKind::Infeasible, "--recompute must be 2-hop or exact");
    }
    communities = delete_negative_communities(g, config.alpha, radius).communities;
  } else if (config.method == "ricci-flow") {
    const FlowState state = ricci_flow(g, config.iters, config.alpha);
    double threshold = 4.0 * median_weight(state);
    if (config.threshold == "sweep") {
      ordered_json doc;
      doc["schema"] = kSchemaVersion;
      doc["method"] = "ricci-flow";
      doc["parameters"] = {{"alpha", config.alpha}, {"iterations", config.iters}};
      doc["sweep"] = ordered_json::array();
      for (const auto& point : threshold_sweep(state))
        doc["sweep"].push_back({{"threshold", point.threshold}, {"communities", point.communities}});
      std::ofstream sweep(sweep_path(config), std::ios::binary | std::ios::trunc);
      if (!sweep) fail(ErrorKind::Infeasible, "cannot write " + sweep_path(config));
      sweep << doc.dump(2) << '\n';
    } else if (config.threshold != "auto") {
      try {
        std::size_t used = 0;
        threshold = std::stod(config.threshold, &used);
        if (used != config.threshold.size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        fail(ErrorKind::Infeasible, "--threshold must be auto, sweep, or a number");
      }
      if (!(threshold > 0.0)) fail(ErrorKind::Infeasible, "--threshold must be positive");
    }
    communities = surgery(state, threshold);
    communities.parameters.insert(communities.parameters.begin(), {"alpha", format_real(config.alpha)});
  } else {
    fail(ErrorKind::Infeasible, "--method must be ricci-flow or delete-negative");
  }
  Sink sink(config.output, stdout_stream);
  write_partition(g, communities, *sink);
}

void run_flow(const RunConfig& config, std::ostream& stdout_stream) {
  const Graph g = load_input_graph(config);
  const FlowState state = ricci_flow(g, config.iters, config.alpha);
  Sink sink(config.output, stdout_stream);
  for (std::size_t it = 0; it < state.iteration; ++it) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      ordered_json record;
      record["schema"] = kSchemaVersion;
      record["model"] = "ricci-flow";
      record["alpha"] = config.alpha;
      record["iter"] = it + 1;
      record["edge"] = {g.name(g.edge(e).u), g.name(g.edge(e).v)};
      record["weight"] = state.weight_trace[it][e];
      record["curvature"] = state.curvature[it][e];
      *sink << record.dump() << '\n';
    }
  }
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> radii;
  if (text == "auto") return radii;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      radii.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad radius '" + item + "'");
    }
  }
  return radii;
}

void run_scalar_cloud(const RunConfig& config, std::ostream& stdout_stream) {
  if (config.n < 1) fail(ErrorKind::Infeasible, "--n (intrinsic dimension) must be at least 1");
  const std::string text = read_file(config.input);
  const DistanceMatrix d = config.input_kind == InputKind::Distances
                               ? parse_distance_csv(text)
                               : euclidean_distances(parse_point_csv(text));
  const std::vector<double> radii = parse_radii(config.radii);
  if (!radii.empty() && radii.size() < 3) fail(ErrorKind::Infeasible, "need at least 3 radii");
  const auto estimates = scalar_estimates(d, config.n, radii);

  Sink sink(config.output, stdout_stream);
  if (config.format == OutputFormat::Json) {
    ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["model"] = "ball-volume-scalar";
    doc["parameters"] = {{"n", config.n}, {"radii", config.radii}};
    doc["values"] = ordered_json::array();
    for (std::size_t i = 0; i < estimates.size(); ++i)
      doc["values"].push_back({{"index", i},
                               {"scalar_estimate", estimates[i] ? ordered_json(*estimates[i])
                                                                : ordered_json(nullptr)}});
    *sink << doc.dump(2) << '\n';
    return;
  }
  *sink << "# model=ball-volume-scalar n=" << config.n << ";radii=" << config.radii << '\n';
  *sink << "index,scalar_estimate\n";
  for (std::size_t i = 0; i < estimates.size(); ++i)
    *sink << i << ',' << (estimates[i] ? format_real(*estimates[i]) : "nan") << '\n';
}

SimplicialComplex load_input_complex(const RunConfig& config, Graph& names) {
  if (config.input_kind == InputKind::Simplices) {
    // One simplex per line; faces are added by closure.
    const std::string text = read_file(config.input);
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::stringstream fields(line);
      std::vector<std::string> row;
      for (std::string f; fields >> f;) row.push_back(f);
      if (row.empty()) continue;
      for (const auto& f : row) names.intern_vertex(f);
      rows.push_back(std::move(row));
    }
    SimplicialComplex k(names.vertex_count());
    for (const auto& row : rows) {
      Simplex s;
      for (const auto& f : row) s.push_back(*names.find_vertex(f));
      k.add_simplex(s);
    }
    return k;
  }
  names = load_input_graph(config);
  return clique_complex(names, config.max_dim);
}

void run_complex(const RunConfig& config, std::ostream& stdout_stream) {
  Graph names;
  SimplicialComplex k = load_input_complex(config, names);
  if (!config.simplex_weights.empty())
    apply_simplex_weights(k, names, read_file(config.simplex_weights));
  std::vector<CurvatureReport> reports;
  const int top = k.max_dim();
  for (int p = 1; p <= top; ++p) {
    if (config.dim && *config.dim != p) continue;
    reports.push_back(forman_simplex_report(k, p, config.weighted && p == 1));
  }
  Sink sink(config.output, stdout_stream);
  write_reports(names, reports, config, *sink);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    if (config.command == "curvature") {
      run_curvature(config, out);
    } else if (config.command == "communities") {
      run_communities(config, out);
    } else if (config.command == "flow") {
      run_flow(config, out);
    } else if (config.command == "scalar-cloud") {
      run_scalar_cloud(config, out);
    } else if (config.command == "complex") {
      run_complex(config, out);
    } else {
      diag << "curvekit: usage: unknown command '" << config.command << "'\n";
      return kUsage;
    }
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Parse:
        diag << "curvekit: parse-error: " << e.what() << '\n';
        return kParseError;
      case ErrorKind::Infeasible:
        diag << "curvekit: infeasible: " << e.what() << '\n';
        return kInfeasible;
      case ErrorKind::Numerical:
        diag << "curvekit: numerical: " << e.what() << '\n';
        return kNumerical;
    }
  } catch (const std::exception& e) {
    diag << "curvekit: numerical: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& diag) {
  CLI::App app{"curvekit: discrete curvature toolkit"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "csv";
  std::string input_kind = "edges";
  std::string models = "forman";

  const std::map<std::string, InputKind> kinds{{"edges", InputKind::Edges},
                                               {"points", InputKind::Points},
                                               {"distances", InputKind::Distances},
                                               {"simplices", InputKind::Simplices}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", config.input, "Input file")->required();
    sub->add_option("-o,--output", config.output, "Output path (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--input-kind", input_kind, "edges, points, distances or simplices")
        ->check(CLI::IsMember({"edges", "points", "distances", "simplices"}));
    sub->add_option("--eps", config.eps, "Neighborhood radius for point or distance input");
    sub->add_option("--alpha", config.alpha, "Laziness of the Ollivier measures")->check(CLI::Range(0.0, 1.0));
  };

  auto* curvature = app.add_subcommand("curvature", "Edge and vertex curvatures of a graph");
  common(curvature);
  curvature->add_option("--model", models, "Comma-separated models or 'all'");
  curvature->add_flag("--hop-metric", config.hop_metric, "Ollivier ground metric in hops");
  curvature->add_option("--max-len", config.max_len, "Haantjes path length bound")
      ->check(CLI::Range(2, kMaxHaantjesLength));
  curvature->add_option("--denominator", config.denominator, "Resistance-edge denominator")
      ->check(CLI::IsMember({"effective-resistance", "weight"}));
  curvature->add_option("--samples", config.samples, "Sectional triple samples above the exhaustive limit");
  curvature->add_option("--seed", config.seed, "Sampling seed");

  auto* communities = app.add_subcommand("communities", "Curvature-based community detection");
  common(communities);
  communities->add_option("--method", config.method, "ricci-flow or delete-negative")
      ->check(CLI::IsMember({"ricci-flow", "delete-negative"}));
  communities->add_option("--iters", config.iters, "Flow iterations")->check(CLI::PositiveNumber);
  communities->add_option("--threshold", config.threshold, "auto, sweep, or a weight");
  communities->add_option("--recompute", config.recompute, "2-hop or exact")
      ->check(CLI::IsMember({"2-hop", "exact"}));
  communities->add_option("--sweep-output", config.sweep_output, "Threshold sweep JSON path");
  communities->add_option("--seed", config.seed, "Unused by deterministic methods");

  auto* flow = app.add_subcommand("flow", "Ricci flow trace as JSON lines");
  common(flow);
  flow->add_option("--iters", config.iters, "Flow iterations")->check(CLI::PositiveNumber);

  auto* scalar = app.add_subcommand("scalar-cloud", "Ball-volume scalar curvature of a point cloud");
  common(scalar);
  scalar->add_option("--n", config.n, "Intrinsic dimension")->required();
  scalar->add_option("--radii", config.radii, "auto or comma-separated radii");
  scalar->add_option("--seed", config.seed, "Unused; estimates are deterministic");

  auto* complex = app.add_subcommand("complex", "Forman curvature of simplices");
  common(complex);
  complex->add_option("--max-dim", config.max_dim, "Largest clique simplex dimension")->check(CLI::Range(1, 5));
  complex->add_option("--dim", config.dim, "Report only this simplex dimension");
  complex->add_flag("--weighted", config.weighted, "Weighted Forman curvature on edges");
  complex->add_option("--weights", config.simplex_weights, "Simplex weight file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    diag << "curvekit: parse-error: " << e.what() << '\n';
    return kParseError;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  config.input_kind = kinds.at(input_kind);
  config.models.clear();
  std::stringstream ss(models);
  for (std::string m; std::getline(ss, m, ',');)
    if (!m.empty()) config.models.push_back(m);
  return run(config, out, diag);
}

}  // namespace curvekit::cli
