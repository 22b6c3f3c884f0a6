#include "dpgraph/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "dpgraph/structure.hpp"
#include "dpgraph/walk_classes.hpp"

namespace dpgraph {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  void grow(int n) {
    while (static_cast<int>(parent.size()) < n) parent.push_back(static_cast<int>(parent.size()));
  }
};

std::string fresh_name(const std::vector<std::string>& names, std::string base, const std::string& suffix) {
  auto taken = [&](const std::string& s) { return std::find(names.begin(), names.end(), s) != names.end(); };
  do {
    base += suffix;
  } while (taken(base));
  return base;
}

std::string copy_name(const std::vector<std::string>& names, const std::string& base) {
  for (int k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (std::find(names.begin(), names.end(), candidate) == names.end()) return candidate;
  }
}

std::string describe_walk(const MetricGraph& g, const Walk& w) {
  std::string out;
  for (VertexId v : walk_vertices(g, w)) out += (out.empty() ? "" : ",") + g.name(v);
  return out;
}

ArcId arc_from(const MetricGraph& g, EdgeId e, VertexId v) { return g.edge(e).u == v ? 2 * e : 2 * e + 1; }

/// Drops vertices without edges (other than those in `keep`) and rebuilds.
MetricGraph compact(const std::vector<std::string>& names, std::vector<Edge> edges, const MetricGraph& like,
                    std::vector<VertexId>& keep) {
  std::vector<bool> used(names.size(), false);
  for (const Edge& e : edges) used[e.u] = used[e.v] = true;
  for (VertexId v : keep) used[v] = true;
  std::vector<VertexId> remap(names.size(), -1);
  std::vector<std::string> kept_names;
  for (std::size_t v = 0; v < names.size(); ++v)
    if (used[v]) {
      remap[v] = static_cast<VertexId>(kept_names.size());
      kept_names.push_back(names[v]);
    }
  for (Edge& e : edges) {
    e.u = remap[e.u];
    e.v = remap[e.v];
  }
  for (VertexId& v : keep) v = remap[v];
  return MetricGraph(std::move(kept_names), std::move(edges), GraphOptions{like.allow_loops(), false}, like.scale());
}

/// Euler trail over `edge_set` from `start`; circuits when every degree is even.
std::vector<ArcId> euler_trail(const MetricGraph& g, const std::vector<EdgeId>& edge_set, VertexId start) {
  std::vector<bool> available(g.edge_count(), false);
  for (EdgeId e : edge_set) available[e] = true;
  std::vector<std::size_t> next(g.vertex_count(), 0);
  std::vector<std::pair<VertexId, ArcId>> stack{{start, -1}};
  std::vector<ArcId> trail;
  while (!stack.empty()) {
    const VertexId v = stack.back().first;
    const auto arcs = g.out_arcs(v);
    auto& i = next[v];
    while (i < arcs.size() && !available[edge_of(arcs[i])]) ++i;
    if (i == arcs.size()) {
      if (stack.back().second >= 0) trail.push_back(stack.back().second);
      stack.pop_back();
    } else {
      const ArcId a = arcs[i];
      available[edge_of(a)] = false;
      stack.emplace_back(g.head(a), a);
    }
  }
  std::reverse(trail.begin(), trail.end());
  return trail;
}

}  // namespace

Multisupport classify_parity(const MetricGraph& g, const Walk& w) {
  if (!is_valid_walk(g, w)) throw std::invalid_argument("classify_parity: invalid walk");
  Multisupport ms;
  ms.arc_multiplicity.assign(g.arc_count(), 0);
  ms.edge_multiplicity.assign(g.edge_count(), 0);
  for (ArcId a : w.arcs) {
    ++ms.arc_multiplicity[a];
    ++ms.edge_multiplicity[edge_of(a)];
  }
  ms.entries = static_cast<int>(w.arcs.size());
  ms.odd.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int m = ms.edge_multiplicity[e];
    ms.odd[e] = m % 2 == 1;
    if (m == 0) continue;
    if (ms.odd[e]) {
      ms.reduced.push_back(ms.arc_multiplicity[2 * e] >= ms.arc_multiplicity[2 * e + 1] ? 2 * e : 2 * e + 1);
    } else {
      ms.reduced.push_back(2 * e);
      ms.reduced.push_back(2 * e + 1);
    }
  }
  return ms;
}

Walk greedy_reorder(const MetricGraph& g, const Walk& w) {
  if (!is_valid_walk(g, w)) throw std::invalid_argument("greedy_reorder: invalid walk");
  std::vector<int> remaining(g.edge_count(), 0);
  for (ArcId a : w.arcs) ++remaining[edge_of(a)];
  std::size_t left = w.arcs.size();
  const VertexId end = walk_end(g, w);

  // After using one copy of e and moving to `to`, can the rest still be
  // covered by a single trail ending at `end`?
  auto still_traversable = [&](EdgeId used, VertexId to) {
    --remaining[used];
    bool ok = true;
    if (left == 1) {
      ok = to == end;
    } else {
      std::vector<bool> seen(g.vertex_count(), false);
      std::vector<VertexId> stack{to};
      seen[to] = true;
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (ArcId a : g.out_arcs(x)) {
          if (remaining[edge_of(a)] == 0) continue;
          const VertexId y = g.head(a);
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
        }
      }
      for (EdgeId e = 0; e < g.edge_count() && ok; ++e)
        if (remaining[e] > 0 && !seen[g.edge(e).u]) ok = false;
    }
    ++remaining[used];
    return ok;
  };

  Walk out{w.start, {}};
  out.arcs.reserve(w.arcs.size());
  VertexId cur = w.start;
  EdgeId last = -1;
  while (left > 0) {
    std::vector<EdgeId> candidates;
    for (ArcId a : g.out_arcs(cur))
      if (remaining[edge_of(a)] > 0) candidates.push_back(edge_of(a));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // Just-traversed edge first, then edges with an even number of copies
    // left (they can be exhausted back and forth), then by index.
    std::stable_sort(candidates.begin(), candidates.end(), [&](EdgeId x, EdgeId y) {
      const auto rank = [&](EdgeId e) { return e == last ? 0 : (remaining[e] % 2 == 0 ? 1 : 2); };
      return rank(x) < rank(y);
    });
    std::optional<EdgeId> chosen;
    for (EdgeId e : candidates) {
      const ArcId a = arc_from(g, e, cur);
      if (still_traversable(e, g.head(a))) {
        chosen = e;
        break;
      }
    }
    if (!chosen) throw std::logic_error("greedy_reorder: no traversable edge");
    const ArcId a = arc_from(g, *chosen, cur);
    out.arcs.push_back(a);
    --remaining[*chosen];
    --left;
    cur = g.head(a);
    last = *chosen;
  }
  return out;
}

std::vector<ArcId> cycle_from_vertices(const MetricGraph& g, const std::vector<VertexId>& vertices) {
  if (vertices.size() < 2) throw std::invalid_argument("a cycle needs at least two vertices");
  std::vector<ArcId> arcs;
  std::set<EdgeId> used;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const VertexId from = vertices[i];
    const VertexId to = vertices[(i + 1) % vertices.size()];
    std::optional<ArcId> found;
    for (ArcId a : g.out_arcs(from))
      if (g.head(a) == to && !used.count(edge_of(a))) {
        found = a;
        break;
      }
    if (!found) throw std::invalid_argument("sequence is not a cycle: no free edge " + g.name(from) + "-" + g.name(to));
    used.insert(edge_of(*found));
    arcs.push_back(*found);
  }
  return arcs;
}

MetricGraph cut_cycle(const MetricGraph& g, const std::vector<ArcId>& cycle, ArcId split_arc) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  std::set<VertexId> vertices;
  std::set<EdgeId> edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const ArcId a = cycle[i];
    if (a < 0 || a >= g.arc_count()) throw std::invalid_argument("cycle arc out of range");
    if (g.head(a) != g.tail(cycle[(i + 1) % cycle.size()])) throw std::invalid_argument("sequence is not a cycle");
    if (!vertices.insert(g.tail(a)).second || !edges.insert(edge_of(a)).second)
      throw std::invalid_argument("sequence is not a simple cycle");
  }
  if (split_arc < 0 || split_arc >= g.arc_count() || !edges.count(edge_of(split_arc)))
    throw std::invalid_argument("split arc is not on the cycle");

  std::vector<std::string> names = g.names();
  const VertexId old_head = g.head(split_arc);
  names.push_back(fresh_name(names, g.name(old_head), "'"));
  const VertexId copy = static_cast<VertexId>(names.size()) - 1;
  std::vector<Edge> list = g.edges();
  Edge& e = list[edge_of(split_arc)];
  if (split_arc & 1)
    e.u = copy;
  else
    e.v = copy;
  return MetricGraph(std::move(names), std::move(list), GraphOptions{g.allow_loops(), false}, g.scale());
}

std::vector<bool> hanging_side(const MetricGraph& g, ArcId bridge) {
  return reachable_without(g, g.head(bridge), edge_of(bridge));
}

MetricGraph relocate_subgraph(const MetricGraph& g, ArcId bridge, VertexId attach_to) {
  if (bridge < 0 || bridge >= g.arc_count()) throw std::invalid_argument("bridge arc out of range");
  if (attach_to < 0 || attach_to >= g.vertex_count()) throw std::invalid_argument("attach vertex out of range");
  const std::vector<bool> side = hanging_side(g, bridge);
  if (side[g.tail(bridge)]) throw std::invalid_argument("edge " + g.edge(edge_of(bridge)).id + " is not a bridge");
  if (side[attach_to]) throw std::invalid_argument("attach vertex lies inside the moved subgraph");
  std::vector<Edge> list = g.edges();
  Edge& e = list[edge_of(bridge)];
  if (bridge & 1)
    e.v = attach_to;
  else
    e.u = attach_to;
  return MetricGraph(g.names(), std::move(list), GraphOptions{g.allow_loops(), false}, g.scale());
}

std::optional<Walk> walk_of_length(const MetricGraph& g, VertexId from, const std::vector<VertexId>& targets,
                                   Length length) {
  if (length < 0) return std::nullopt;
  const int n = g.vertex_count();
  const auto steps = static_cast<std::size_t>(length) + 1;
  std::vector<std::vector<bool>> reach(steps, std::vector<bool>(n, false));
  reach[0][from] = true;
  for (std::size_t t = 0; t < steps; ++t)
    for (VertexId v = 0; v < n; ++v) {
      if (!reach[t][v]) continue;
      for (ArcId a : g.out_arcs(v)) {
        const auto nt = t + static_cast<std::size_t>(g.length(a));
        if (nt < steps) reach[nt][g.head(a)] = true;
      }
    }
  std::optional<VertexId> end;
  for (VertexId t : targets)
    if (reach[steps - 1][t] && (!end || t < *end)) end = t;
  if (!end) return std::nullopt;
  Walk w;
  VertexId v = *end;
  std::size_t t = steps - 1;
  while (t > 0) {
    std::optional<ArcId> back;
    for (ArcId a : g.out_arcs(v)) {
      const ArcId in = reverse_arc(a);
      const auto len = static_cast<std::size_t>(g.length(in));
      if (len <= t && reach[t - len][g.tail(in)]) {
        back = in;
        break;
      }
    }
    w.arcs.push_back(*back);
    t -= static_cast<std::size_t>(g.length(*back));
    v = g.tail(*back);
  }
  w.start = v;
  std::reverse(w.arcs.begin(), w.arcs.end());
  return w;
}

SurgeryReport to_bead(const DPSystem& system) {
  const OracleResult oracle = stabilization_oracle(system);
  return to_bead(system, oracle.lst_walk, oracle.lst_edge);
}

SurgeryReport to_bead(const DPSystem& system, const Walk& lst_walk, EdgeId lst_edge) {
  const MetricGraph& g = system.graph;
  if (!is_valid_walk(g, lst_walk)) throw std::invalid_argument("to_bead: invalid walk");
  if (lst_edge < 0 || lst_edge >= g.edge_count()) throw std::invalid_argument("to_bead: LST edge out of range");
  const VertexId finish = walk_end(g, lst_walk);
  if (finish != g.edge(lst_edge).u && finish != g.edge(lst_edge).v)
    throw std::invalid_argument("to_bead: walk does not end at an endpoint of the LST edge");
  if (std::find(system.points.begin(), system.points.end(), lst_walk.start) == system.points.end())
    throw std::invalid_argument("to_bead: walk does not start at an initial point");

  SurgeryReport report;
  report.operation = "to-bead";
  report.parameters["lst_edge"] = g.edge(lst_edge).id;
  report.parameters["lst_walk"] = describe_walk(g, lst_walk);
  report.input = system;
  if (system.points.size() > 1) report.diagnostics.push_back("dropped every initial point except the walk start");

  const VertexId start = lst_walk.start;
  const Walk greedy = greedy_reorder(g, lst_walk);
  report.parameters["greedy_walk"] = describe_walk(g, greedy);
  const Multisupport ms = classify_parity(g, greedy);

  std::vector<EdgeId> first_seen;
  {
    std::vector<bool> seen(g.edge_count(), false);
    for (ArcId a : greedy.arcs)
      if (!seen[edge_of(a)]) {
        seen[edge_of(a)] = true;
        first_seen.push_back(edge_of(a));
      }
  }

  // Stage 1: detach even edges the walk reaches but does not cross.
  std::vector<std::string> names = g.names();
  std::vector<Edge> edges = g.edges();
  std::vector<VertexId> origin(names.size());
  std::iota(origin.begin(), origin.end(), 0);
  for (EdgeId e : first_seen) {
    const int mult = ms.edge_multiplicity[e];
    if (mult < 2 || mult % 2 == 1 || e == lst_edge) continue;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < greedy.arcs.size(); ++i)
      if (edge_of(greedy.arcs[i]) == e) pos.push_back(i);
    if (pos.back() - pos.front() + 1 != pos.size()) continue;
    const VertexId va = g.tail(greedy.arcs[pos.front()]);
    if (g.head(greedy.arcs[pos.back()]) != va) continue;
    const VertexId vb = g.head(greedy.arcs[pos.front()]);
    if (va == vb) continue;
    int other_edges = 0;
    UnionFind uf(static_cast<int>(names.size()));
    for (EdgeId f = 0; f < static_cast<EdgeId>(edges.size()); ++f) {
      if (f == e) continue;
      if (edges[f].u == vb || edges[f].v == vb) ++other_edges;
      uf.unite(edges[f].u, edges[f].v);
    }
    if (other_edges == 0) continue;
    if (uf.find(va) != uf.find(vb)) {
      report.diagnostics.push_back("kept " + edges[e].id + " attached: detaching it would disconnect the graph");
      continue;
    }
    names.push_back(fresh_name(names, names[vb], "'"));
    origin.push_back(origin[vb]);
    const VertexId copy = static_cast<VertexId>(names.size()) - 1;
    (edges[e].u == vb ? edges[e].u : edges[e].v) = copy;
    report.diagnostics.push_back("cut " + edges[e].id + " from " + names[vb]);
  }
  const MetricGraph cut(names, edges, GraphOptions{g.allow_loops(), false}, g.scale());

  // Stage 2: odd edges, one copy each, form Eulerian components plus one
  // trail from the start to the walk's end. Each visit of a vertex gets its
  // own copy so that circuits become cycles and the trail a path.
  std::vector<std::string> final_names = cut.names();
  std::vector<VertexId> final_origin(final_names.size());
  std::iota(final_origin.begin(), final_origin.end(), 0);
  std::vector<std::vector<VertexId>> copies(final_names.size());
  for (std::size_t v = 0; v < copies.size(); ++v) copies[v].push_back(static_cast<VertexId>(v));
  std::vector<Edge> final_edges = cut.edges();
  std::vector<bool> placed(cut.edge_count(), false);

  std::vector<EdgeId> odd_edges;
  for (EdgeId e = 0; e < cut.edge_count(); ++e)
    if (ms.odd[e]) odd_edges.push_back(e);
  UnionFind odd_uf(cut.vertex_count());
  for (EdgeId e : odd_edges) odd_uf.unite(cut.edge(e).u, cut.edge(e).v);
  std::vector<bool> component_done(cut.vertex_count(), false);
  std::vector<VertexId> roots;
  for (EdgeId e : odd_edges) {
    const int root = odd_uf.find(cut.edge(e).u);
    if (!component_done[root]) {
      component_done[root] = true;
      roots.push_back(root);
    }
  }
  for (VertexId root : roots) {
    std::vector<EdgeId> comp;
    for (EdgeId e : odd_edges)
      if (odd_uf.find(cut.edge(e).u) == root) comp.push_back(e);
    VertexId from = cut.edge(comp.front()).u;
    const bool has_start = odd_uf.find(start) == root;
    if (has_start) from = start;
    const std::vector<ArcId> trail = euler_trail(cut, comp, from);
    if (trail.size() != comp.size()) throw std::logic_error("to_bead: odd component has no Euler trail");
    const bool closed = cut.head(trail.back()) == from;
    std::set<VertexId> visited;
    std::vector<VertexId> occurrence;
    auto take = [&](VertexId v) {
      if (visited.insert(v).second) return v;
      final_names.push_back(copy_name(final_names, cut.name(v)));
      final_origin.push_back(v);
      const VertexId c = static_cast<VertexId>(final_names.size()) - 1;
      copies[v].push_back(c);
      return c;
    };
    occurrence.push_back(take(from));
    for (std::size_t i = 0; i < trail.size(); ++i) {
      const bool wraps = closed && i + 1 == trail.size();
      occurrence.push_back(wraps ? occurrence.front() : take(cut.head(trail[i])));
    }
    for (std::size_t i = 0; i < trail.size(); ++i) {
      const EdgeId e = edge_of(trail[i]);
      final_edges[e].u = occurrence[i];
      final_edges[e].v = occurrence[i + 1];
      placed[e] = true;
    }
    for (VertexId v = 0; v < cut.vertex_count(); ++v)
      if (copies[v].size() > 1 && odd_uf.find(v) == root)
        report.diagnostics.push_back("split " + cut.name(v) + " into " + std::to_string(copies[v].size()) + " copies");
  }

  // Stage 3: restore even edges as bridges between the pieces.
  UnionFind uf(static_cast<int>(final_names.size()));
  for (EdgeId e : odd_edges) uf.unite(final_edges[e].u, final_edges[e].v);
  auto attach = [&](EdgeId e, VertexId near_copy, VertexId far_vertex) {
    VertexId far_copy = -1;
    for (VertexId c : copies[far_vertex])
      if (uf.find(c) != uf.find(near_copy)) {
        far_copy = c;
        break;
      }
    if (far_copy < 0) {
      final_names.push_back(copy_name(final_names, cut.name(far_vertex)));
      final_origin.push_back(far_vertex);
      far_copy = static_cast<VertexId>(final_names.size()) - 1;
      copies[far_vertex].push_back(far_copy);
      uf.grow(static_cast<int>(final_names.size()));
      report.diagnostics.push_back("restored " + cut.edge(e).id + " as a pendant to avoid a second cycle");
    }
    const bool near_is_u = final_origin[near_copy] == cut.edge(e).u;
    final_edges[e].u = near_is_u ? near_copy : far_copy;
    final_edges[e].v = near_is_u ? far_copy : near_copy;
    placed[e] = true;
    uf.unite(near_copy, far_copy);
    return far_copy;
  };

  // Follow the walk so used even edges hang off the copy the walk is at.
  VertexId at = start;
  for (ArcId a : greedy.arcs) {
    const EdgeId e = edge_of(a);
    const VertexId tail = cut.tail(a);
    const VertexId head = cut.head(a);
    if (!placed[e]) {
      const VertexId near = final_origin[at] == tail ? at : copies[tail].front();
      at = attach(e, near, head);
      continue;
    }
    if (final_edges[e].u == at)
      at = final_edges[e].v;
    else if (final_edges[e].v == at)
      at = final_edges[e].u;
    else
      at = final_origin[final_edges[e].u] == head ? final_edges[e].u : final_edges[e].v;
  }
  if (!placed[lst_edge]) {
    const VertexId near_vertex = finish;
    const VertexId near = final_origin[at] == near_vertex ? at : copies[near_vertex].front();
    attach(lst_edge, near, cut.edge(lst_edge).u == near_vertex ? cut.edge(lst_edge).v : cut.edge(lst_edge).u);
  }
  for (EdgeId e = 0; e < cut.edge_count(); ++e) {
    if (placed[e]) continue;
    attach(e, copies[cut.edge(e).u].front(), cut.edge(e).v);
  }

  // The walk must finish on the copy of its last vertex that carries e_s.
  // When e_s was itself crossed, the linearized trail may end on another
  // copy; identify the two (walks still project onto the input graph).
  {
    Edge& es = final_edges[lst_edge];
    const bool at_u = es.u == at, at_v = es.v == at;
    if (!at_u && !at_v && final_origin[at] == finish) {
      const VertexId keep_copy = final_origin[es.u] == finish ? es.u : es.v;
      for (Edge& e : final_edges) {
        if (e.u == at) e.u = keep_copy;
        if (e.v == at) e.v = keep_copy;
      }
      report.diagnostics.push_back("rejoined " + final_names[at] + " with " + final_names[keep_copy] +
                                   " so the walk ends on " + cut.edge(lst_edge).id);
    }
  }

  // The reconstructed walk has to reach the same end of e_s as the original.
  const bool finish_at_u = origin[final_origin[final_edges[lst_edge].u]] == finish;
  const bool finish_at_v = origin[final_origin[final_edges[lst_edge].v]] == finish;
  std::vector<VertexId> keep{start};
  const MetricGraph result = compact(final_names, final_edges, g, keep);
  report.parameters["source"] = result.name(keep[0]);

  report.before = simulate(system);
  try {
    report.output = DPSystem(result, {keep[0]});
  } catch (const InvalidGraph& err) {
    report.output.graph = result;
    report.output.points = {keep[0]};
    report.diagnostics.push_back(std::string("output is not a valid system: ") + err.what());
    report.held = false;
    return report;
  }
  report.after = simulate(report.output);
  const Length target = walk_length(g, lst_walk);
  std::vector<VertexId> targets;
  if (finish_at_u) targets.push_back(result.edge(lst_edge).u);
  if (finish_at_v) targets.push_back(result.edge(lst_edge).v);
  report.walk_after = walk_of_length(result, keep[0], targets, target);

  const bool bead = is_bead(result);
  const bool ts_ok = report.after.t_s >= report.before.t_s;
  if (!bead) report.diagnostics.push_back("postcondition violated: output is not a bead graph");
  if (!ts_ok)
    report.diagnostics.push_back("postcondition violated: t_s dropped from " + std::to_string(report.before.t_s) +
                                 " to " + std::to_string(report.after.t_s));
  if (!report.walk_after)
    report.diagnostics.push_back("postcondition violated: no walk of length " + std::to_string(target) +
                                 " reaches the LST edge");
  report.held = bead && ts_ok && report.walk_after.has_value();
  return report;
}

namespace {

/// Vertex of degree >= 4 and one of its bridges whose far side holds neither
/// the source nor the stabilization edge.
struct Relocation {
  ArcId bridge;
  VertexId target;
};

std::optional<Relocation> next_relocation(const MetricGraph& g, VertexId source, EdgeId lst_edge,
                                          std::vector<std::string>& diagnostics) {
  const BlockDecomposition blocks = blocks_bridges(g);
  std::set<EdgeId> bridges(blocks.bridges.begin(), blocks.bridges.end());
  const Edge& es = g.edge(lst_edge);
  const auto dist_u = shortest_distance(g, source, es.u);
  const auto dist_v = shortest_distance(g, source, es.v);
  const VertexId far = (dist_u && dist_v && *dist_v < *dist_u) ? es.u : es.v;
  const std::vector<bool> beyond = reachable_without(g, far, lst_edge);

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 4) continue;
    for (ArcId a : g.out_arcs(v)) {
      const EdgeId e = edge_of(a);
      if (!bridges.count(e) || e == lst_edge) continue;
      const std::vector<bool> side = hanging_side(g, a);
      if (side[source] || side[es.u] || side[es.v]) continue;
      // Leaves reached from the far end of e_s without crossing it, outside
      // the moved part; prefer those lying past v.
      std::optional<VertexId> best;
      int best_rank = 0;
      for (VertexId leaf : bead_leaves(g)) {
        if (side[leaf] || leaf == source || leaf == v || !beyond[leaf]) continue;
        // leaf is past v when every path from `far` to it meets v
        std::vector<bool> without_v(g.vertex_count(), false);
        {
          std::vector<VertexId> stack{far};
          without_v[far] = true;
          while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            if (x == v) continue;
            for (ArcId b : g.out_arcs(x)) {
              if (edge_of(b) == lst_edge) continue;
              const VertexId y = g.head(b);
              if (!without_v[y]) {
                without_v[y] = true;
                stack.push_back(y);
              }
            }
          }
        }
        const bool past = v == far || !without_v[leaf];
        const int rank = (past ? 0 : 2) + (g.degree(leaf) <= 1 ? 0 : 1);
        if (!best || rank < best_rank) {
          best = leaf;
          best_rank = rank;
        }
      }
      if (best) return Relocation{a, *best};
      diagnostics.push_back("no bead leaf available for " + g.edge(e).id + " at " + g.name(v));
    }
  }
  return std::nullopt;
}

/// Vertices of one shortest path from `from` to `to` (lowest arcs first).
std::vector<VertexId> shortest_path(const MetricGraph& g, VertexId from, VertexId to) {
  std::vector<std::optional<Length>> dist(g.vertex_count());
  std::vector<ArcId> via(g.vertex_count(), -1);
  using Item = std::pair<Length, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[from] = 0;
  queue.emplace(0, from);
  while (!queue.empty()) {
    const auto [d, x] = queue.top();
    queue.pop();
    if (d != *dist[x]) continue;
    for (ArcId a : g.out_arcs(x)) {
      const VertexId y = g.head(a);
      if (!dist[y] || d + g.length(a) < *dist[y]) {
        dist[y] = d + g.length(a);
        via[y] = a;
        queue.emplace(*dist[y], y);
      }
    }
  }
  std::vector<VertexId> path{to};
  while (path.back() != from) path.push_back(g.tail(via[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

SurgeryReport reduce_degrees(const DPSystem& system) {
  if (system.points.size() != 1) throw std::invalid_argument("reduce_degrees needs exactly one initial point");
  if (!is_bead(system.graph)) throw std::invalid_argument("reduce_degrees needs a bead graph");
  SurgeryReport report;
  report.operation = "reduce-degrees";
  report.input = system;
  report.before = simulate(system);
  const OracleResult oracle = stabilization_oracle(system);
  report.parameters["lst_edge"] = system.graph.edge(oracle.lst_edge).id;
  const VertexId source = system.points.front();
  {
    const Edge& es = system.graph.edge(oracle.lst_edge);
    const auto du = shortest_distance(system.graph, source, es.u);
    const auto dv = shortest_distance(system.graph, source, es.v);
    const VertexId near = *du <= *dv ? es.u : es.v;
    std::vector<VertexId> handle = shortest_path(system.graph, source, near);
    handle.push_back(near == es.u ? es.v : es.u);
    bool broom = false;
    try {
      broom = is_bead_broom(system.graph, handle);
    } catch (const std::invalid_argument&) {
    }
    report.parameters["bead_broom"] = broom ? "true" : "false";
    if (!broom) report.diagnostics.push_back("input is not a bead broom around the source and the LST edge");
  }

  MetricGraph g = system.graph;
  const int limit = g.edge_count() * g.edge_count() + 1;
  for (int iter = 0; iter < limit && g.max_degree() > 3; ++iter) {
    const auto move = next_relocation(g, source, oracle.lst_edge, report.diagnostics);
    if (!move) break;
    report.diagnostics.push_back("moved " + g.edge(edge_of(move->bridge)).id + " subgraph from " +
                                 g.name(g.tail(move->bridge)) + " to " + g.name(move->target));
    g = relocate_subgraph(g, move->bridge, move->target);
  }
  report.output = DPSystem(g, {source});
  report.after = simulate(report.output);
  const bool degree_ok = g.max_degree() <= 3;
  const bool ts_ok = report.after.t_s >= report.before.t_s;
  const bool bead = is_bead(g);
  if (!degree_ok) report.diagnostics.push_back("postcondition violated: a vertex still has degree >= 4");
  if (!ts_ok)
    report.diagnostics.push_back("postcondition violated: t_s dropped from " + std::to_string(report.before.t_s) +
                                 " to " + std::to_string(report.after.t_s));
  if (!bead) report.diagnostics.push_back("postcondition violated: output is not a bead graph");
  report.held = degree_ok && ts_ok && bead;
  return report;
}

SurgeryReport cut_cycle_report(const DPSystem& system, const std::vector<ArcId>& cycle, ArcId split_arc) {
  SurgeryReport report;
  report.operation = "cut-cycle";
  const MetricGraph& g = system.graph;
  report.parameters["split_edge"] = g.edge(edge_of(split_arc)).id;
  report.parameters["split_vertex"] = g.name(g.head(split_arc));
  report.input = system;
  report.output = DPSystem(cut_cycle(g, cycle, split_arc), system.points);
  report.before = simulate(system);
  report.after = simulate(report.output);
  const GrowthComparison cmp = compare_growth(report.after, report.before);
  report.held = cmp.dominated;
  for (Tick t : cmp.violations) report.diagnostics.push_back("growth exceeds original at tick " + std::to_string(t));
  return report;
}

SurgeryReport relocate_report(const DPSystem& system, ArcId bridge, VertexId attach_to) {
  SurgeryReport report;
  report.operation = "relocate";
  const MetricGraph& g = system.graph;
  report.parameters["bridge"] = g.edge(edge_of(bridge)).id;
  report.parameters["from"] = g.name(g.tail(bridge));
  report.parameters["attach_to"] = g.name(attach_to);
  report.input = system;
  report.output = DPSystem(relocate_subgraph(g, bridge, attach_to), system.points);
  report.before = simulate(system);
  report.after = simulate(report.output);
  report.held = report.after.t_s >= report.before.t_s;
  if (!report.held)
    report.diagnostics.push_back("t_s dropped from " + std::to_string(report.before.t_s) + " to " +
                                 std::to_string(report.after.t_s));
  return report;
}

}  // namespace dpgraph
