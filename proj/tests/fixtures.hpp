#pragma once

#include <string>
#include <vector>

#include "dpgraph/graph.hpp"

namespace fixture {

using namespace dpgraph;

inline MetricGraph named(std::vector<std::string> names, std::vector<Edge> edges, bool loops = false) {
  return MetricGraph(std::move(names), std::move(edges), GraphOptions{loops, false});
}

/// Pendant of length 1 into a double edge of lengths 1 and 2.
inline DPSystem pendant_double_edge() {
  return DPSystem(named({"v1", "x", "y"}, {{"e1", 0, 1, 1}, {"e2", 1, 2, 1}, {"es", 1, 2, 2}}), {0});
}

inline MetricGraph unit_path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(Edge{"e" + std::to_string(i + 1), i, i + 1, 1});
  return MetricGraph(n + 1, edges);
}

inline MetricGraph unit_star(int k) {
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back(Edge{"e" + std::to_string(i + 1), 0, i + 1, 1});
  return MetricGraph(k + 1, edges);
}

/// Path v0 - v1 - v2 - v3 with arcs a2, a3, a4.
inline MetricGraph reorder_path() {
  return named({"v0", "v1", "v2", "v3"}, {{"a2", 0, 1, 1}, {"a3", 1, 2, 1}, {"a4", 2, 3, 1}});
}

/// Path v0 v1 v2 v6 with the cycle v1 v2 v3 v4 v5 hanging on it.
inline MetricGraph cycle_with_tails() {
  return named({"v0", "v1", "v2", "v3", "v4", "v5", "v6"},
               {{"e01", 0, 1, 1},
                {"e12", 1, 2, 1},
                {"e23", 2, 3, 1},
                {"e34", 3, 4, 1},
                {"e45", 4, 5, 1},
                {"e51", 5, 1, 1},
                {"e26", 2, 6, 1}});
}

/// Tail v0 - v1 - v2 - v3 and the 4-cycle v1 v4 v5 v6.
inline MetricGraph tail_and_square() {
  return named({"v0", "v1", "v2", "v3", "v4", "v5", "v6"},
               {{"e1", 0, 1, 1},
                {"e2", 1, 2, 1},
                {"e3", 2, 3, 1},
                {"e4", 1, 4, 1},
                {"e5", 4, 5, 1},
                {"e6", 5, 6, 1},
                {"e7", 6, 1, 1}});
}

inline std::vector<VertexId> vertices(const MetricGraph& g, const std::vector<std::string>& names) {
  std::vector<VertexId> out;
  for (const auto& n : names) out.push_back(*g.find_vertex(n));
  return out;
}

}  // namespace fixture
