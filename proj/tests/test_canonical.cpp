#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dpgraph/canonical.hpp"
#include "dpgraph/enumeration.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dpgraph;

namespace {

MetricGraph relabel(const MetricGraph& g, const std::vector<int>& perm, std::mt19937& rng) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
    if (rng() % 2) std::swap(e.u, e.v);
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return MetricGraph(g.vertex_count(), edges, GraphOptions{g.allow_loops(), false});
}

}  // namespace

TEST_CASE("canonical form ignores labels") {
  std::mt19937 rng(7);
  for (const auto& lengths : std::vector<std::vector<Length>>{{1, 1, 2}, {1, 1, 1, 1}, {1, 2, 2, 3}}) {
    for (const MetricGraph& g : enumerate_graphs(unit_multiset(lengths))) {
      std::vector<int> perm(g.vertex_count());
      std::iota(perm.begin(), perm.end(), 0);
      for (int k = 0; k < 5; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(relabel(g, perm, rng)) == canonical_form(g));
      }
    }
  }
}

TEST_CASE("canonical form separates non-isomorphic graphs") {
  const auto graphs = enumerate_graphs(unit_multiset({1, 1, 1, 2}));
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      CHECK(canonical_form(graphs[i]) != canonical_form(graphs[j]));
      CHECK_FALSE(oracle::isomorphic(graphs[i], graphs[j]));
    }
}

TEST_CASE("point colours matter") {
  const MetricGraph p = fixture::unit_path(2);
  CHECK(canonical_form(DPSystem(p, {0})) == canonical_form(DPSystem(p, {2})));
  CHECK(canonical_form(DPSystem(p, {0})) != canonical_form(DPSystem(p, {1})));
}

TEST_CASE("canonical order realizes the form") {
  const MetricGraph g = fixture::cycle_with_tails();
  const auto order = canonical_order(g);
  CHECK(order.size() == static_cast<std::size_t>(g.vertex_count()));
  std::vector<VertexId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g.vertex_count(); ++i) CHECK(sorted[i] == i);
}

TEST_CASE("vertex cap") {
  CHECK_THROWS_AS(canonical_form(fixture::unit_path(kCanonicalMaxVertices)), std::length_error);
}
