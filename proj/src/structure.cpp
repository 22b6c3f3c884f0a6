#include "dpgraph/structure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dpgraph {

BlockDecomposition blocks_bridges(const MetricGraph& g) {
  const int n = g.vertex_count();
  BlockDecomposition out;
  out.block_of_edge.assign(g.edge_count(), -1);
  out.cycle_blocks_of_vertex.assign(n, {});

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> edge_stack;
  int timer = 0;

  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
  };

  auto pop_block = [&](EdgeId until) {
    Block b;
    std::set<VertexId> verts;
    while (true) {
      const EdgeId e = edge_stack.back();
      edge_stack.pop_back();
      b.edges.push_back(e);
      verts.insert(g.edge(e).u);
      verts.insert(g.edge(e).v);
      if (e == until) break;
    }
    std::sort(b.edges.begin(), b.edges.end());
    b.vertices.assign(verts.begin(), verts.end());
    const int idx = static_cast<int>(out.blocks.size());
    for (EdgeId e : b.edges) out.block_of_edge[e] = idx;
    out.blocks.push_back(std::move(b));
  };

  for (VertexId root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto arcs = g.out_arcs(f.v);
      if (f.next < arcs.size()) {
        const ArcId a = arcs[f.next++];
        const EdgeId e = edge_of(a);
        if (e == f.parent_edge) continue;
        const VertexId w = g.head(a);
        if (disc[w] < 0) {
          edge_stack.push_back(e);
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] >= disc[parent.v]) pop_block(done.parent_edge);
        }
      }
    }
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).u != g.edge(e).v) continue;
    out.block_of_edge[e] = static_cast<int>(out.blocks.size());
    out.blocks.push_back(Block{{e}, {g.edge(e).u}});
  }

  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    const Block& b = out.blocks[i];
    if (b.is_bridge()) out.bridges.push_back(b.edges[0]);
    if (b.is_simple_cycle())
      for (VertexId v : b.vertices) out.cycle_blocks_of_vertex[v].push_back(static_cast<int>(i));
  }
  std::sort(out.bridges.begin(), out.bridges.end());
  return out;
}

bool is_bead(const BlockDecomposition& d) {
  for (const Block& b : d.blocks)
    if (!b.is_bridge() && !b.is_simple_cycle()) return false;
  for (const auto& cycles : d.cycle_blocks_of_vertex)
    if (cycles.size() > 1) return false;
  return true;
}

bool is_bead(const MetricGraph& g) { return is_bead(blocks_bridges(g)); }

bool is_bead_broom(const MetricGraph& g, const std::vector<VertexId>& handle) {
  if (handle.empty()) throw std::invalid_argument("empty handle");
  std::set<VertexId> distinct(handle.begin(), handle.end());
  if (distinct.size() != handle.size()) throw std::invalid_argument("handle repeats a vertex");
  for (VertexId v : handle)
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("handle vertex outside graph");
  for (std::size_t i = 1; i < handle.size(); ++i) {
    bool adjacent = false;
    for (ArcId a : g.out_arcs(handle[i - 1])) adjacent = adjacent || g.head(a) == handle[i];
    if (!adjacent) throw std::invalid_argument("handle is not a path");
  }
  if (!is_bead(g)) return false;
  int heavy = 0;
  for (std::size_t i = 0; i < handle.size(); ++i) {
    if (g.degree(handle[i]) <= 2) continue;
    const bool terminal = i == 0 || i + 1 == handle.size();
    if (!terminal) return false;
    ++heavy;
  }
  return heavy <= 1;
}

std::vector<VertexId> bead_leaves(const MetricGraph& g) {
  const BlockDecomposition d = blocks_bridges(g);
  if (!is_bead(d)) throw std::invalid_argument("bead_leaves requires a bead graph");
  std::set<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) out.insert(v);
  for (const Block& b : d.blocks) {
    if (!b.is_simple_cycle()) continue;
    std::vector<EdgeId> incident;
    std::vector<VertexId> touching;
    for (EdgeId e : d.bridges) {
      const Edge& edge = g.edge(e);
      for (VertexId v : b.vertices)
        if (edge.u == v || edge.v == v) {
          incident.push_back(e);
          touching.push_back(v);
        }
    }
    if (incident.size() > 1) continue;
    for (VertexId v : b.vertices)
      if (touching.empty() || v != touching[0]) out.insert(v);
  }
  return {out.begin(), out.end()};
}

bool is_tree(const MetricGraph& g) { return g.is_connected() && g.edge_count() == g.vertex_count() - 1; }

bool is_linear(const MetricGraph& g) { return is_tree(g) && g.max_degree() <= 2; }

std::vector<std::vector<ArcId>> simple_cycles(const MetricGraph& g) {
  std::vector<std::vector<ArcId>> out;
  const int n = g.vertex_count();
  std::vector<bool> on_path(n, false);
  std::vector<ArcId> path;
  // Rooted at the lowest vertex; each cycle is found once per direction, keep
  // the direction whose first edge index is below its last.
  for (VertexId root = 0; root < n; ++root) {
    auto dfs = [&](auto&& self, VertexId v) -> void {
      for (ArcId a : g.out_arcs(v)) {
        const VertexId w = g.head(a);
        if (!path.empty() && edge_of(a) == edge_of(path.back())) continue;
        if (w == root) {
          if (path.empty()) {
            if (w == v && (a & 1) == 0) out.push_back({a});  // self-loop
            continue;
          }
          path.push_back(a);
          if (edge_of(path.front()) < edge_of(path.back()))
            out.push_back(path);
          path.pop_back();
          continue;
        }
        if (w < root || on_path[w]) continue;
        on_path[w] = true;
        path.push_back(a);
        self(self, w);
        path.pop_back();
        on_path[w] = false;
      }
    };
    on_path[root] = true;
    dfs(dfs, root);
    on_path[root] = false;
  }
  return out;
}

std::vector<bool> reachable_without(const MetricGraph& g, VertexId from, EdgeId removed) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (ArcId a : g.out_arcs(x)) {
      if (edge_of(a) == removed) continue;
      const VertexId y = g.head(a);
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace dpgraph
