#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "dpgraph/canonical.hpp"
#include "dpgraph/cli.hpp"
#include "dpgraph/enumeration.hpp"
#include "dpgraph/io.hpp"

using namespace dpgraph;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dpgraph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DPGRAPH_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("dpgraph_test_" + name);
  write_text(path.string(), text);
  return path.string();
}

}  // namespace

TEST_CASE("simulate writes a timeline with the t_s marker") {
  const Result r = cli({"simulate", "--edges-file", data("fig3a.json")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("tick,N,coll,e1,e2,es\n", 0) == 0);
  CHECK(r.out.find("# t_s=4 ") != std::string::npos);
  CHECK(r.out.find("\n4,8,1,2,2,4\n") != std::string::npos);
  const Result j = cli({"simulate", "--graph", data("fig3a.json"), "--format", "json"});
  CHECK(Json::parse(j.out)["N_stable"] == 8);
}

TEST_CASE("search and enumerate") {
  const Result r = cli({"search", "--edges", "1,1,1,1"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["max_ts"] == "4");
  CHECK(cli({"enumerate", "--edges", "1,2", "--count-only"}).out == "2\n");
  const Result lines = cli({"enumerate", "--edges", "1,1"});
  CHECK(std::count(lines.out.begin(), lines.out.end(), '\n') == 2);
}

TEST_CASE("times come out in user units") {
  const std::string path = temp_file(
      "half.json", R"({"edges":[{"u":"a","v":"b","len":"1/2"},{"u":"b","v":"c","len":"1/2"}],"points":["a"]})");
  const Result r = cli({"simulate", "--graph", path});
  CHECK(r.out.find("# t_s=1/2 ") != std::string::npos);
  CHECK(Json::parse(cli({"search", "--edges", "1/2,1/2,1"}).out)["max_ts"] == "2");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({"simulate", "--bogus"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"simulate"}).code == 2);
  CHECK(cli({"simulate", "--graph", temp_file("bad.json", "{not json")}).code == 2);
  CHECK(cli({"simulate", "--graph", "/nonexistent/file.json"}).code == 2);
  CHECK(cli({"enumerate", "--edges", "1,1,1,1,1,1,1,1"}).code == 2);
  CHECK(cli({"search", "--edges", "1,1", "--jobs", "0"}).code == 2);
  CHECK(cli({"simulate", "--graph", data("fig3a.json"), "--max-ticks", "2"}).code == 2);
  const Result loop = cli({"simulate", "--graph", temp_file("loop.json", R"({"edges":[{"u":"a","v":"a","len":1}],"points":["a"]})")});
  CHECK(loop.code == 2);
  CHECK(loop.err.find("self-loop") != std::string::npos);
  CHECK(cli({"--version"}).out.find("dpgraph") != std::string::npos);
}

TEST_CASE("verdict failures exit with 1") {
  // moving the tail of a path next to the source shortens the longest walk
  const std::string path = temp_file(
      "path.json",
      R"({"edges":[{"id":"e1","u":"v0","v":"v1","len":1},{"id":"e2","u":"v1","v":"v2","len":1},{"id":"e3","u":"v2","v":"v3","len":1}],"points":["v0"]})");
  const Result r = cli({"transform", "--op", "relocate", "--graph", path, "--bridge", "e3", "--from", "v2", "--to", "v0"});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out)["verdict"] == "violated");
  const Result ok = cli({"transform", "--op", "to-bead", "--graph", data("fig3a.json")});
  CHECK(ok.code == 0);
  CHECK(cli({"verify-theorem", "--edges", "1,1,2"}).code == 0);
  CHECK(cli({"verify-corollary", "--graph", data("fig3a.json")}).code == 0);
}

TEST_CASE("transform operations") {
  const Result cut = cli({"transform", "--op", "cut-cycle", "--graph", data("fig3a.json"), "--cycle", "y,x", "--split-at",
                          "y", "--split-edge", "es"});
  REQUIRE(cut.code == 0);
  const Json doc = Json::parse(cut.out);
  CHECK(doc["after"]["t_s"] == "3");
  CHECK(doc["after"]["N_stable"] == 4);
  const std::string path = temp_file(
      "reorder.json",
      R"({"edges":[{"id":"a2","u":"v0","v":"v1","len":1},{"id":"a3","u":"v1","v":"v2","len":1},{"id":"a4","u":"v2","v":"v3","len":1}],"points":["v0"]})");
  const Result greedy =
      cli({"transform", "--op", "greedy-walk", "--graph", path, "--walk-arcs", "a2,a3,~a3,~a2,a2,a3,a4"});
  REQUIRE(greedy.code == 0);
  CHECK(Json::parse(greedy.out)["output"]["arcs"] == Json::parse(R"(["a2","~a2","a2","a3","~a3","a3","a4"])"));
  const Result reduce = cli({"transform", "--op", "reduce-degrees", "--graph", data("fig3a.json")});
  CHECK(reduce.code == 0);
  const std::string out = (std::filesystem::temp_directory_path() / "dpgraph_test_out.json").string();
  CHECK(cli({"transform", "--op", "to-bead", "--graph", data("fig3a.json"), "--output", out}).code == 0);
  CHECK(build_system(read_graph_file(out)).graph.edge_count() == 3);
}

TEST_CASE("classes, compare and render") {
  const Json classes = Json::parse(cli({"classes", "--graph", data("fig3a.json")}).out);
  CHECK(classes["t_s"] == "4");
  CHECK(classes["classes"]["es"].size() == 4);
  CHECK(classes["classes"]["e1"][0].contains("witnessWalk"));
  const std::string path = temp_file(
      "star.json",
      R"({"edges":[{"u":"c","v":"a","len":1},{"u":"c","v":"b","len":1},{"u":"c","v":"d","len":2}],"points":["c"]})");
  const Json cmp = Json::parse(cli({"compare", "--graph", path, "--other", data("fig3a.json")}).out);
  // three points at tick 0 against one
  CHECK(cmp["dominated"] == false);
  CHECK(cmp["violations"][0] == "0");
  const Result a = cli({"render", "--graph", data("fig3a.json")});
  const Result b = cli({"render", "--graph", data("fig3a.json")});
  CHECK(a.out == b.out);
  CHECK(a.out.find("doublecircle") != std::string::npos);
  CHECK(a.out.find("len=2") != std::string::npos);
}

TEST_CASE("render of a single edge") {
  const std::string dot = render_dot(MetricGraph::from_edges(2, {{0, 1, 1}}));
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 6);
  CHECK(dot.find("\"v0\" -- \"v1\"") != std::string::npos);
}

TEST_CASE("graph JSON round trip") {
  for (const auto& lengths : std::vector<std::vector<Length>>{{1, 1, 2, 2}, {1, 2, 3, 3}, {1, 1, 1, 1}}) {
    for (const MetricGraph& g : enumerate_graphs(scale_to_integer(parse_length_list(
             std::to_string(lengths[0]) + "/2," + std::to_string(lengths[1]) + "," + std::to_string(lengths[2]) + "," +
             std::to_string(lengths[3]))))) {
      const RawGraph raw = parse_graph_json(graph_to_json(g).dump());
      const MetricGraph back = build_graph(raw);
      CHECK(canonical_form(back) == canonical_form(g));
      CHECK(back.scale() == g.scale());
    }
  }
}

TEST_CASE("conjecture scan table") {
  const Json doc = Json::parse(cli({"conjecture-scan", "--edges", "1,1,1,1", "--family", "1"}).out);
  CHECK(doc["rows"][0]["ratio"] == "1");
  CHECK(doc["rows"][1]["ratio"] == "4/3");
}
