#pragma once

// Slow reference implementations used only to cross-check the library.

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "dpgraph/graph.hpp"

namespace oracle {

using namespace dpgraph;

struct NaiveRun {
  std::vector<std::int64_t> n;
  std::vector<bool> collision;
};

/// Points as (arc, offset) pairs in a set; offsets count units from the tail.
inline NaiveRun naive_run(const MetricGraph& g, const std::vector<VertexId>& sources, int ticks) {
  std::set<std::pair<ArcId, Length>> pts;
  for (VertexId s : sources)
    for (ArcId a : g.out_arcs(s)) pts.insert({a, 0});
  NaiveRun run;
  run.n.push_back(static_cast<std::int64_t>(pts.size()));
  run.collision.push_back(false);
  for (int t = 1; t <= ticks; ++t) {
    std::set<std::pair<ArcId, Length>> next;
    std::map<VertexId, int> hits;
    for (const auto& [a, k] : pts) {
      if (k + 1 == g.length(a))
        ++hits[g.head(a)];
      else
        next.insert({a, k + 1});
    }
    bool coll = false;
    for (const auto& [v, c] : hits) {
      coll = coll || c >= 2;
      for (ArcId a : g.out_arcs(v)) next.insert({a, 0});
    }
    pts = std::move(next);
    run.n.push_back(static_cast<std::int64_t>(pts.size()));
    run.collision.push_back(coll);
  }
  return run;
}

/// reach[t][v]: some walk of length exactly t from a source ends at v.
inline std::vector<std::vector<bool>> exact_reach(const MetricGraph& g, const std::vector<VertexId>& sources,
                                                  Length horizon) {
  std::vector<std::vector<bool>> reach(horizon + 1, std::vector<bool>(g.vertex_count(), false));
  for (VertexId s : sources) reach[0][s] = true;
  for (Length t = 0; t <= horizon; ++t)
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!reach[t][v]) continue;
      for (ArcId a : g.out_arcs(v))
        if (t + g.length(a) <= horizon) reach[t + g.length(a)][g.head(a)] = true;
    }
  return reach;
}

/// Saturation time of every place of edge e by scanning walk lengths up to
/// `horizon`; nullopt when no walk of that class is found.
inline std::vector<std::optional<Length>> brute_places(const MetricGraph& g, const std::vector<VertexId>& sources,
                                                       EdgeId e, Length horizon) {
  const auto reach = exact_reach(g, sources, horizon);
  const Edge& edge = g.edge(e);
  const Length mod = 2 * edge.length;
  std::vector<std::optional<Length>> out(mod);
  for (Length r = 0; r < mod; ++r)
    for (Length t = 0; t <= horizon && !out[r]; ++t) {
      if (reach[t][edge.u] && t % mod == r) out[r] = t;
      if (reach[t][edge.v] && t % mod == (r + edge.length) % mod) out[r] = t;
    }
  return out;
}

/// Isomorphism of length-labelled multigraphs by trying every bijection.
inline bool isomorphic(const MetricGraph& a, const MetricGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto edge_key = [](const MetricGraph& g, const std::vector<int>& map) {
    std::vector<std::tuple<int, int, Length>> out;
    for (const Edge& e : g.edges()) {
      const int x = map[e.u], y = map[e.v];
      out.emplace_back(std::min(x, y), std::max(x, y), e.length);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<int> id(b.vertex_count());
  std::iota(id.begin(), id.end(), 0);
  const auto target = edge_key(b, id);
  std::vector<int> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (edge_key(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Every set partition of `slots` items as restricted growth strings.
inline void set_partitions(int slots, const std::function<void(const std::vector<int>&, int)>& visit) {
  std::vector<int> rgs(slots, 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == slots) {
      visit(rgs, blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[pos] = b;
      rec(pos + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  if (slots > 0) rec(1, 1);
}

/// Graph classes over `lengths` from all plain set partitions, deduplicated
/// by pairwise isomorphism.
inline std::vector<MetricGraph> brute_graphs(const std::vector<Length>& lengths, bool allow_loops,
                                             bool connected_only, std::int64_t* admissible = nullptr) {
  std::vector<MetricGraph> classes;
  std::int64_t count = 0;
  set_partitions(2 * static_cast<int>(lengths.size()), [&](const std::vector<int>& rgs, int blocks) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (!allow_loops && rgs[2 * i] == rgs[2 * i + 1]) return;
      edges.push_back(Edge{"", rgs[2 * i], rgs[2 * i + 1], lengths[i]});
    }
    MetricGraph g(blocks, edges, GraphOptions{allow_loops, false});
    if (connected_only && !g.is_connected()) return;
    ++count;
    for (const auto& c : classes)
      if (isomorphic(c, g)) return;
    classes.push_back(g);
  });
  if (admissible) *admissible = count;
  return classes;
}

}  // namespace oracle
