#include <algorithm>

#include "doctest.h"
#include "dpgraph/canonical.hpp"
#include "dpgraph/enumeration.hpp"
#include "dpgraph/structure.hpp"
#include "dpgraph/surgery.hpp"
#include "dpgraph/walk_classes.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dpgraph;
using fixture::vertices;

namespace {

std::vector<std::string> names_of(const MetricGraph& g, const Walk& w) {
  std::vector<std::string> out;
  for (VertexId v : walk_vertices(g, w)) out.push_back(g.name(v));
  return out;
}

}  // namespace

TEST_CASE("greedy reorder of the back-and-forth example") {
  const MetricGraph g = fixture::reorder_path();
  // a2, a3, ~a3, ~a2, a2, a3, a4
  const Walk w{0, {0, 2, 3, 1, 0, 2, 4}};
  REQUIRE(is_valid_walk(g, w));
  const Walk greedy = greedy_reorder(g, w);
  CHECK(greedy.arcs == std::vector<ArcId>{0, 1, 0, 2, 3, 2, 4});
  CHECK(greedy_reorder(g, greedy) == greedy);
}

TEST_CASE("greedy reorder of the six-vertex cycle walk") {
  const MetricGraph g = fixture::cycle_with_tails();
  const Walk w = walk_from_vertices(
      g, vertices(g, {"v0", "v1", "v2", "v3", "v4", "v5", "v1", "v2", "v3", "v4", "v5", "v1", "v2", "v6"}));
  const Walk greedy = greedy_reorder(g, w);
  CHECK(names_of(g, greedy) == std::vector<std::string>{"v0", "v1", "v5", "v1", "v2", "v1", "v2", "v3", "v4", "v5",
                                                        "v4", "v3", "v2", "v6"});
}

TEST_CASE("greedy reorder invariants") {
  for (const MetricGraph& g : enumerate_graphs(unit_multiset({1, 1, 2, 3}))) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const OracleResult r = stabilization_oracle(g, {v});
      for (const EdgePlaces& table : r.tables)
        for (const Place& p : table.places) {
          if (!p.saturation) continue;
          const Walk& w = p.witness;
          const Walk greedy = greedy_reorder(g, w);
          CHECK(greedy.start == w.start);
          CHECK(walk_end(g, greedy) == walk_end(g, w));
          CHECK(walk_length(g, greedy) == walk_length(g, w));
          CHECK(classify_parity(g, greedy).edge_multiplicity == classify_parity(g, w).edge_multiplicity);
          CHECK(classify_parity(g, greedy).odd == classify_parity(g, w).odd);
          CHECK(greedy_reorder(g, greedy) == greedy);
        }
    }
  }
  const MetricGraph p = fixture::unit_path(4);
  const Walk straight{0, {0, 2, 4, 6}};
  CHECK(greedy_reorder(p, straight) == straight);
}

TEST_CASE("parity of the reordered example") {
  const MetricGraph g = fixture::reorder_path();
  const Multisupport ms = classify_parity(g, Walk{0, {0, 1, 0, 2, 3, 2, 4}});
  CHECK(ms.edge_multiplicity == std::vector<int>{3, 3, 1});
  CHECK(ms.odd == std::vector<bool>{true, true, true});
  CHECK(ms.entries == 7);
  CHECK(ms.reduced.size() == 3);
  const Multisupport pair = classify_parity(g, Walk{0, {0, 1}});
  CHECK(pair.edge_multiplicity[0] == 2);
  CHECK_FALSE(pair.odd[0]);
  CHECK(pair.reduced == std::vector<ArcId>{0, 1});
}

TEST_CASE("cutting the 4-cycle at v1") {
  const MetricGraph g = fixture::tail_and_square();
  const auto cycle = cycle_from_vertices(g, vertices(g, {"v1", "v4", "v5", "v6"}));
  const MetricGraph cut = cut_cycle(g, cycle, cycle.back());
  CHECK(cut.vertex_count() == g.vertex_count() + 1);
  CHECK(cut.name(cut.vertex_count() - 1) == "v1'");
  const Edge& e = cut.edge(*cut.find_edge("e7"));
  CHECK(cut.name(e.u) == "v6");
  CHECK(cut.name(e.v) == "v1'");
  CHECK(cut.edge_lengths() == g.edge_lengths());
  CHECK(is_tree(cut));
  CHECK_THROWS_AS(cut_cycle(g, cycle, 0), std::invalid_argument);
  CHECK_THROWS_AS(cycle_from_vertices(g, vertices(g, {"v1", "v5"})), std::invalid_argument);
}

TEST_CASE("triangle becomes a path") {
  const MetricGraph tri = MetricGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  const auto cycle = cycle_from_vertices(tri, {0, 1, 2});
  const MetricGraph cut = cut_cycle(tri, cycle, cycle[1]);
  CHECK(is_linear(cut));
}

TEST_CASE("repeated cutting reaches a tree") {
  for (const MetricGraph& start : enumerate_graphs(unit_multiset({1, 1, 2, 2}))) {
    MetricGraph g = start;
    for (int guard = 0; guard < 10; ++guard) {
      const auto cycles = simple_cycles(g);
      if (cycles.empty()) break;
      g = cut_cycle(g, cycles.front(), cycles.front().back());
    }
    CHECK(is_tree(g));
    CHECK(g.is_connected());
    CHECK(g.edge_count() == start.edge_count());
  }
}

TEST_CASE("cutting never speeds up growth") {
  for (const auto& lengths : std::vector<std::vector<Length>>{{1, 1, 2}, {1, 2, 2, 3}, {1, 1, 1, 1}}) {
    for (const MetricGraph& g : enumerate_graphs(unit_multiset(lengths))) {
      for (const auto& cycle : simple_cycles(g))
        for (ArcId a : cycle)
          for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const SurgeryReport r = cut_cycle_report(DPSystem(g, {v}), cycle, a);
            CHECK(r.held);
          }
    }
  }
}

TEST_CASE("the double edge cut two ways") {
  const DPSystem s = fixture::pendant_double_edge();
  const MetricGraph& g = s.graph;
  const auto cycle = cycle_from_vertices(g, vertices(g, {"y", "x"}));
  // the arc of es entering y: es detaches from y, leaving a star at x
  ArcId into_y = -1;
  for (ArcId a : cycle)
    if (g.edge(edge_of(a)).id == "es") into_y = g.head(a) == *g.find_vertex("y") ? a : reverse_arc(a);
  const SurgeryReport star = cut_cycle_report(s, cycle, into_y);
  CHECK(star.after.t_s == 3);
  CHECK(star.after.n_stable == 4);
  CHECK(star.output.graph.max_degree() == 3);
  CHECK(star.held);
  const SurgeryReport path = cut_cycle_report(s, cycle, reverse_arc(into_y));
  CHECK(is_linear(path.output.graph));
  CHECK(path.after.t_s == 4);
}

TEST_CASE("relocating a hanging fragment") {
  // v0 - v1 - v2 - v3 with the fragment v4 - v5 hanging from v0
  const MetricGraph g = fixture::named({"v0", "v1", "v2", "v3", "v4", "v5"},
                                       {{"e1", 0, 1, 1}, {"e2", 1, 2, 1}, {"e3", 2, 3, 1}, {"b", 0, 4, 1}, {"f", 4, 5, 1}});
  const MetricGraph moved = relocate_subgraph(g, 2 * 3, 3);
  const Edge& b = moved.edge(3);
  CHECK(moved.name(b.u) == "v3");
  CHECK(moved.name(b.v) == "v4");
  CHECK(moved.edge_lengths() == g.edge_lengths());
  CHECK(moved.is_connected());
  CHECK(canonical_form(relocate_subgraph(g, 2 * 3, 0)) == canonical_form(g));
  CHECK_THROWS_AS(relocate_subgraph(g, 2 * 3, 5), std::invalid_argument);
  const MetricGraph cyc = MetricGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK_THROWS_AS(relocate_subgraph(cyc, 0, 2), std::invalid_argument);
}

TEST_CASE("moving a fragment past the stabilization edge keeps t_s") {
  // handle v0..v3, path v3 v4 v5 v6 to a leaf, fragment v7 v8 at v4
  const MetricGraph g = fixture::named({"v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"},
                                       {{"e1", 0, 1, 1},
                                        {"e2", 1, 2, 1},
                                        {"e3", 2, 3, 1},
                                        {"e4", 3, 4, 1},
                                        {"e5", 4, 5, 1},
                                        {"e6", 5, 6, 1},
                                        {"b", 4, 7, 1},
                                        {"f", 7, 8, 1}});
  const DPSystem s(g, {0});
  const SurgeryReport r = relocate_report(s, 2 * 6, 6);
  CHECK(r.held);
  CHECK(r.after.t_s >= r.before.t_s);
  const SurgeryReport same = reduce_degrees(s);
  CHECK(same.held);
  CHECK(canonical_form(same.output) == canonical_form(s));
}

TEST_CASE("reducing a degree-4 vertex") {
  // path v0..v6 with a pendant pair at v4 and another pendant at v4
  const MetricGraph g = fixture::named({"v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9"},
                                       {{"e1", 0, 1, 1},
                                        {"e2", 1, 2, 1},
                                        {"e3", 2, 3, 1},
                                        {"e4", 3, 4, 1},
                                        {"e5", 4, 5, 1},
                                        {"e6", 5, 6, 1},
                                        {"b", 4, 7, 1},
                                        {"f", 7, 8, 1},
                                        {"p", 4, 9, 1}});
  const DPSystem s(g, {0});
  REQUIRE(g.max_degree() == 4);
  const SurgeryReport r = reduce_degrees(s);
  CHECK(r.output.graph.max_degree() <= 3);
  CHECK(r.after.t_s >= r.before.t_s);
  CHECK(r.held);
  CHECK(r.output.graph.edge_lengths() == g.edge_lengths());
}

TEST_CASE("to_bead on the six-vertex cycle walk cuts the chord side") {
  const MetricGraph g = fixture::cycle_with_tails();
  const DPSystem s(g, {0});
  const Walk w = walk_from_vertices(
      g, vertices(g, {"v0", "v1", "v2", "v3", "v4", "v5", "v1", "v2", "v3", "v4", "v5", "v1", "v2", "v6"}));
  const SurgeryReport r = to_bead(s, w, *g.find_edge("e26"));
  const MetricGraph& out = r.output.graph;
  const Edge& e51 = out.edge(*out.find_edge("e51"));
  CHECK(out.name(e51.u) == "v5'");
  CHECK(out.name(e51.v) == "v1");
  CHECK(is_bead(out));
  REQUIRE(r.walk_after.has_value());
  CHECK(walk_length(out, *r.walk_after) == walk_length(g, w));
  CHECK(out.edge_lengths() == g.edge_lengths());
}

TEST_CASE("to_bead on a bead path is the identity") {
  const DPSystem s(fixture::unit_path(4), {0});
  const SurgeryReport r = to_bead(s);
  CHECK(r.held);
  CHECK(canonical_form(r.output) == canonical_form(s));
}

TEST_CASE("to_bead splits a vertex crossed twice by an Eulerian part") {
  // v0 - v1 - z carries the walk; v1 - w is crossed back and forth, and a
  // bowtie at w is toured once.
  const MetricGraph g = fixture::named({"v0", "v1", "z", "w", "p", "q", "r", "s"},
                                       {{"a", 0, 1, 1},
                                        {"es", 1, 2, 1},
                                        {"b", 1, 3, 1},
                                        {"c1", 3, 4, 1},
                                        {"c2", 4, 5, 1},
                                        {"c3", 5, 3, 1},
                                        {"d1", 3, 6, 1},
                                        {"d2", 6, 7, 1},
                                        {"d3", 7, 3, 1}});
  const DPSystem s(g, {0});
  const Walk w = walk_from_vertices(g, vertices(g, {"v0", "v1", "w", "p", "q", "w", "r", "s", "w", "v1", "z"}));
  const SurgeryReport r = to_bead(s, w, *g.find_edge("es"));
  const MetricGraph& out = r.output.graph;
  CHECK(out.vertex_count() == g.vertex_count() + 1);
  CHECK(out.find_vertex("w_2").has_value());
  CHECK(is_bead(out));
  CHECK(out.max_degree() <= 3);
  CHECK(r.walk_after.has_value());
}

TEST_CASE("to_bead keeps t_s for every system from three and four edges") {
  int checked = 0;
  for (const auto& lengths : std::vector<std::vector<Length>>{{1, 1, 2}, {1, 1, 1, 1}, {1, 2, 2, 3}, {1, 1, 2, 2}}) {
    for (const MetricGraph& g : enumerate_graphs(unit_multiset(lengths))) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const SurgeryReport r = to_bead(DPSystem(g, {v}));
        INFO(canonical_form(g), " from ", g.name(v));
        for (const auto& d : r.diagnostics) INFO(d);
        CHECK(is_bead(r.output.graph));
        CHECK(r.output.graph.is_connected());
        CHECK(r.after.t_s >= r.before.t_s);
        CHECK(r.held);
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("walk of a given length") {
  const MetricGraph g = fixture::pendant_double_edge().graph;
  const auto w = walk_of_length(g, 0, {2}, 4);
  REQUIRE(w.has_value());
  CHECK(walk_length(g, *w) == 4);
  CHECK(walk_end(g, *w) == 2);
  CHECK_FALSE(walk_of_length(fixture::unit_path(2), 0, {2}, 3).has_value());
}
