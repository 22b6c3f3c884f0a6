#include "dpgraph/canonical.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace dpgraph {

namespace {

using Coloring = std::vector<int>;

/// Replaces each key by its rank among the distinct keys.
template <typename Key>
Coloring rank(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return out;
}

int color_count(const Coloring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; }

/// Equitable refinement: split cells by the multiset of (length, neighbour colour).
Coloring refine(const MetricGraph& g, Coloring colors) {
  const int n = g.vertex_count();
  int count = color_count(colors);
  while (true) {
    std::vector<std::pair<int, std::vector<std::pair<Length, int>>>> keys(n);
    for (VertexId v = 0; v < n; ++v) {
      keys[v].first = colors[v];
      for (ArcId a : g.out_arcs(v)) keys[v].second.emplace_back(g.length(a), colors[g.head(a)]);
      std::sort(keys[v].second.begin(), keys[v].second.end());
    }
    Coloring next = rank(keys);
    const int next_count = color_count(next);
    colors = std::move(next);
    if (next_count == count) return colors;
    count = next_count;
  }
}

std::string encode(const MetricGraph& g, const std::vector<int>& user_colors, const Coloring& position) {
  const int n = g.vertex_count();
  std::vector<int> color_at(n, 0);
  for (VertexId v = 0; v < n; ++v) color_at[position[v]] = user_colors.empty() ? 0 : user_colors[v];
  std::vector<std::tuple<int, int, Length>> edges;
  for (const Edge& e : g.edges()) {
    const int a = position[e.u], b = position[e.v];
    edges.emplace_back(std::min(a, b), std::max(a, b), e.length);
  }
  std::sort(edges.begin(), edges.end());
  std::string out = std::to_string(n) + "|";
  for (int c : color_at) out += std::to_string(c) + ",";
  out += "|";
  for (const auto& [a, b, len] : edges) out += std::to_string(a) + "-" + std::to_string(b) + ":" + std::to_string(len) + ",";
  return out;
}

struct Search {
  const MetricGraph& g;
  const std::vector<int>& user_colors;
  std::string best;
  Coloring best_position;
  bool found = false;

  void run(const Coloring& colors) {
    const int n = g.vertex_count();
    if (color_count(colors) == n) {
      std::string code = encode(g, user_colors, colors);
      if (!found || code < best) {
        best = std::move(code);
        best_position = colors;
        found = true;
      }
      return;
    }
    // First non-singleton cell in colour order.
    std::vector<int> size(n, 0);
    for (int c : colors) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    for (VertexId v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      std::vector<std::pair<int, int>> keys(n);
      for (VertexId u = 0; u < n; ++u) keys[u] = {colors[u], u == v ? 0 : 1};
      run(refine(g, rank(keys)));
    }
  }
};

Coloring initial_coloring(const MetricGraph& g, const std::vector<int>& user_colors) {
  const int n = g.vertex_count();
  if (n > kCanonicalMaxVertices)
    throw std::length_error("canonical_form supports at most " + std::to_string(kCanonicalMaxVertices) + " vertices");
  if (!user_colors.empty() && static_cast<int>(user_colors.size()) != n)
    throw std::invalid_argument("vertex colour list has the wrong size");
  std::vector<std::pair<int, std::vector<Length>>> keys(n);
  for (VertexId v = 0; v < n; ++v) {
    keys[v].first = user_colors.empty() ? 0 : user_colors[v];
    for (ArcId a : g.out_arcs(v)) keys[v].second.push_back(g.length(a));
    std::sort(keys[v].second.begin(), keys[v].second.end());
  }
  return refine(g, rank(keys));
}

}  // namespace

std::string canonical_form(const MetricGraph& g, const std::vector<int>& vertex_colors) {
  if (g.vertex_count() == 0) return "0||";
  Search search{g, vertex_colors, {}, {}, false};
  search.run(initial_coloring(g, vertex_colors));
  return search.best;
}

std::vector<VertexId> canonical_order(const MetricGraph& g, const std::vector<int>& vertex_colors) {
  std::vector<VertexId> order(g.vertex_count());
  if (g.vertex_count() == 0) return order;
  Search search{g, vertex_colors, {}, {}, false};
  search.run(initial_coloring(g, vertex_colors));
  for (VertexId v = 0; v < g.vertex_count(); ++v) order[search.best_position[v]] = v;
  return order;
}

std::string canonical_form(const DPSystem& s) {
  std::vector<int> colors(s.graph.vertex_count(), 0);
  for (VertexId p : s.points) colors[p] = 1;
  return canonical_form(s.graph, colors);
}

}  // namespace dpgraph
