#include "dpgraph/walk_classes.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dpgraph {

int EdgePlaces::reachable_count() const {
  return static_cast<int>(std::count_if(places.begin(), places.end(), [](const Place& p) { return p.saturation.has_value(); }));
}

int EdgePlaces::saturated_by(Length t) const {
  return static_cast<int>(
      std::count_if(places.begin(), places.end(), [t](const Place& p) { return p.saturation && *p.saturation <= t; }));
}

EdgePlaces place_table(const MetricGraph& g, const std::vector<VertexId>& sources, EdgeId e) {
  if (sources.empty()) throw std::invalid_argument("place_table needs at least one source");
  const Edge& edge = g.edge(e);
  const Length modulus = 2 * edge.length;
  const auto m = static_cast<std::size_t>(modulus);
  const std::size_t states = static_cast<std::size_t>(g.vertex_count()) * m;
  auto index = [m](VertexId v, Length r) { return static_cast<std::size_t>(v) * m + static_cast<std::size_t>(r); };

  std::vector<std::optional<Length>> dist(states);
  std::vector<ArcId> pred(states, -1);
  using Item = std::pair<Length, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (VertexId s : sources) {
    if (s < 0 || s >= g.vertex_count()) throw std::out_of_range("source outside graph");
    dist[index(s, 0)] = 0;
    queue.emplace(0, index(s, 0));
  }
  while (!queue.empty()) {
    const auto [d, state] = queue.top();
    queue.pop();
    if (d != *dist[state]) continue;
    const VertexId v = static_cast<VertexId>(state / m);
    const Length r = static_cast<Length>(state % m);
    for (ArcId a : g.out_arcs(v)) {
      const Length len = g.length(a);
      const std::size_t next = index(g.head(a), (r + len) % modulus);
      const Length nd = d + len;
      if (!dist[next] || nd < *dist[next]) {
        dist[next] = nd;
        pred[next] = a;
        queue.emplace(nd, next);
      }
    }
  }

  auto witness = [&](VertexId v, Length r) {
    Walk w;
    std::size_t state = index(v, r);
    while (pred[state] >= 0 && *dist[state] > 0) {
      const ArcId a = pred[state];
      w.arcs.push_back(a);
      const Length pr = ((r - g.length(a)) % modulus + modulus) % modulus;
      v = g.tail(a);
      r = pr;
      state = index(v, r);
    }
    w.start = v;
    std::reverse(w.arcs.begin(), w.arcs.end());
    return w;
  };

  EdgePlaces out;
  out.edge = e;
  out.length = edge.length;
  out.dist_a.resize(m);
  out.dist_b.resize(m);
  for (Length r = 0; r < modulus; ++r) {
    out.dist_a[r] = dist[index(edge.u, r)];
    out.dist_b[r] = dist[index(edge.v, r)];
  }
  out.places.resize(m);
  for (Length r = 0; r < modulus; ++r) {
    Place& p = out.places[r];
    p.residue_a = static_cast<int>(r);
    p.residue_b = static_cast<int>((r + edge.length) % modulus);
    const auto& da = out.dist_a[p.residue_a];
    const auto& db = out.dist_b[p.residue_b];
    if (!da && !db) continue;
    if (da && (!db || *da <= *db)) {
      p.saturation = da;
      p.arrival = edge.u;
      p.witness = witness(edge.u, p.residue_a);
    } else {
      p.saturation = db;
      p.arrival = edge.v;
      p.witness = witness(edge.v, p.residue_b);
    }
  }
  return out;
}

std::int64_t OracleResult::n_at(Length t) const {
  std::int64_t n = 0;
  for (const auto& table : tables) n += table.saturated_by(t);
  return n;
}

OracleResult stabilization_oracle(const MetricGraph& g, const std::vector<VertexId>& sources) {
  OracleResult out;
  out.per_edge.resize(g.edge_count());
  bool have_max = false;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EdgePlaces table = place_table(g, sources, e);
    out.per_edge[e] = table.reachable_count();
    out.n_stable += out.per_edge[e];
    for (const Place& p : table.places) {
      if (!p.saturation) continue;
      if (!have_max || *p.saturation > out.t_s) {
        have_max = true;
        out.t_s = *p.saturation;
        out.lst_edge = e;
        out.lst_walk = p.witness;
      }
    }
    out.tables.push_back(std::move(table));
  }
  return out;
}

}  // namespace dpgraph
