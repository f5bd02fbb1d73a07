#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "curvekit/cli.hpp"

namespace fs = std::filesystem;
using curvekit::cli::main_entry;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("curvekit_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "curvekit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("curvature command emits one row per edge per model") {
  Workspace ws;
  const auto graph = ws.write("graph.tsv", "a b\nb c\nc a\nc d\n");
  const Result r = run({"curvature", "--model", "forman,ollivier", "--alpha", "0.5", graph, "-o", ws.path("out.csv")});
  CHECK(r.code == 0);
  const auto rows = lines(ws.read("out.csv"));
  REQUIRE(rows.size() == 1 + 2 * 4);
  CHECK(rows[0] == "model,parameters,kind,object,value");
  CHECK(rows[1] == "forman,,edge,a b,0");
  CHECK(rows[5] == "ollivier,alpha=0.5;metric=weighted,edge,a b,0.75");
}

TEST_CASE("curvature JSON is versioned") {
  Workspace ws;
  const auto graph = ws.write("graph.tsv", "a b\n");
  const Result r = run({"curvature", "--model", "bakry-emery", "--format", "json", graph});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["reports"][0]["model"] == "bakry-emery");
  CHECK(doc["reports"][0]["kind"] == "vertex");
  CHECK(doc["reports"][0]["values"][0]["value"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("model all emits a wide table") {
  Workspace ws;
  const auto graph = ws.write("graph.tsv", "a b\nb c\nc a\nc d\n");
  const Result r = run({"curvature", "--model", "all", graph});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 4 + 4);
  CHECK(rows[0].rfind("kind,object,forman[]", 0) == 0);
  CHECK(rows[0].find("resistance[]") != std::string::npos);

  const auto split = ws.write("split.tsv", "a b\nc d\n");
  const Result s = run({"curvature", "--model", "all", split});
  CHECK(s.code == 0);
  CHECK(lines(s.out)[0].find("resistance") == std::string::npos);
}

TEST_CASE("communities command with sweep output") {
  Workspace ws;
  std::string text;
  for (int side = 0; side < 2; ++side)
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) text += "n" + std::to_string(side * 5 + i) + " n" + std::to_string(side * 5 + j) + "\n";
  text += "n4 n5\n";
  const auto graph = ws.write("bar.tsv", text);
  const Result r = run({"communities", "--method", "ricci-flow", "--iters", "20", "--threshold", "sweep", graph, "-o",
                        ws.path("parts.csv")});
  CHECK(r.code == 0);
  const auto rows = lines(ws.read("parts.csv"));
  REQUIRE(rows.size() == 2 + 10);
  CHECK(rows[0].rfind("# method=ricci-flow", 0) == 0);
  CHECK(rows[1] == "vertex,label");
  const auto sweep = nlohmann::json::parse(ws.read("parts.sweep.json"));
  CHECK(sweep["schema"] == 1);
  CHECK(!sweep["sweep"].empty());

  const Result d = run({"communities", "--method", "delete-negative", graph});
  CHECK(d.code == 0);
  const auto dl = lines(d.out);
  CHECK(dl[2] == "n0,0");
  CHECK(dl[11] == "n9,1");
}

TEST_CASE("flow command writes JSON lines") {
  Workspace ws;
  const auto graph = ws.write("graph.tsv", "a b\nb c\n");
  const Result r = run({"flow", "--iters", "3", graph});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  const auto first = nlohmann::json::parse(rows[0]);
  CHECK(first["iter"] == 1);
  CHECK(first["edge"] == nlohmann::json::array({"a", "b"}));
  CHECK(first.contains("weight"));
  CHECK(first.contains("curvature"));
}

TEST_CASE("scalar-cloud command") {
  Workspace ws;
  std::string csv;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) csv += std::to_string(i) + "," + std::to_string(j) + "\n";
  const auto cloud = ws.write("cloud.csv", csv);
  const Result r = run({"scalar-cloud", "--n", "2", "--radii", "auto", cloud});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2 + 400);
  CHECK(rows[1] == "index,scalar_estimate");
  CHECK(rows[2].rfind("0,", 0) == 0);
  CHECK(run({"scalar-cloud", "--n", "2", "--radii", "1,2", cloud}).code == 3);
  CHECK(run({"scalar-cloud", "--n", "2", "--radii", "1,x,3", cloud}).code == 2);
}

TEST_CASE("complex command") {
  Workspace ws;
  const auto simplices = ws.write("k.txt", "a b c\nc d\n");
  const Result r = run({"complex", "--input-kind", "simplices", simplices});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows[0] == "model,parameters,kind,object,value");
  CHECK(std::find(rows.begin(), rows.end(), "forman-simplex,dim=2;weighted=0,simplex,a b c,3") != rows.end());

  const auto graph = ws.write("g.tsv", "a b\nb c\nc a\n");
  const Result e = run({"complex", "--max-dim", "2", "--dim", "1", graph});
  CHECK(e.code == 0);
  CHECK(lines(e.out).size() == 1 + 3);
}

TEST_CASE("exit codes") {
  Workspace ws;
  CHECK(run({"curvature", ws.path("missing.tsv")}).code == 2);
  const auto bad = ws.write("bad.tsv", "a a\n");
  const Result parse = run({"curvature", bad});
  CHECK(parse.code == 2);
  CHECK(parse.err.rfind("curvekit: parse-error:", 0) == 0);
  const auto good = ws.write("good.tsv", "a b\n");
  CHECK(run({"curvature", "--model", "nonsense", good}).code == 3);
  CHECK(run({"curvature", "--alpha", "2", good}).code == 2);
  CHECK(run({"curvature", "--input-kind", "points", good}).code != 0);
  const auto pts = ws.write("pts.csv", "0,0\n1,0\n");
  CHECK(run({"curvature", "--input-kind", "points", pts}).code == 3);
  CHECK(run({"curvature", "--input-kind", "points", "--eps", "1.5", pts}).code == 0);
  CHECK(run({}).code == 2);
  const auto split = ws.write("split.tsv", "a b\nc d\n");
  CHECK(run({"curvature", "--model", "resistance", split}).code == 3);
}
