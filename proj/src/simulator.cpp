#include "dpgraph/simulator.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace dpgraph {

SimState SimState::empty(const MetricGraph& g) {
  SimState s;
  s.cells.resize(g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) s.cells[a].assign(static_cast<std::size_t>(g.length(a)), 0);
  return s;
}

std::int64_t SimState::point_count() const {
  std::int64_t n = 0;
  for (const auto& arc : cells) n += std::count(arc.begin(), arc.end(), 1);
  return n;
}

std::int64_t SimState::edge_count(EdgeId e) const {
  const auto& fwd = cells.at(2 * e);
  const auto& bwd = cells.at(2 * e + 1);
  return std::count(fwd.begin(), fwd.end(), 1) + std::count(bwd.begin(), bwd.end(), 1);
}

std::string SimState::key() const {
  std::string out;
  unsigned char byte = 0;
  int bits = 0;
  for (const auto& arc : cells)
    for (std::uint8_t c : arc) {
      byte = static_cast<unsigned char>(byte | (c << bits));
      if (++bits == 8) {
        out.push_back(static_cast<char>(byte));
        byte = 0;
        bits = 0;
      }
    }
  if (bits) out.push_back(static_cast<char>(byte));
  return out;
}

StepResult step(const SimState& state, const MetricGraph& g) {
  StepResult r{SimState::empty(g), std::vector<int>(g.vertex_count(), 0)};
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const auto& cur = state.cells[a];
    auto& nxt = r.next.cells[a];
    const std::size_t len = cur.size();
    for (std::size_t k = 0; k + 1 < len; ++k) nxt[k + 1] = cur[k];
    if (len > 0 && cur[len - 1]) ++r.arrivals[g.head(a)];
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (r.arrivals[v] == 0) continue;
    for (ArcId a : g.out_arcs(v)) r.next.cells[a][0] = 1;
  }
  return r;
}

SimState initial_state(const DPSystem& system) {
  SimState s = SimState::empty(system.graph);
  for (VertexId p : system.points)
    for (ArcId a : system.graph.out_arcs(p)) s.cells[a][0] = 1;
  return s;
}

Tick default_max_ticks(const MetricGraph& g) {
  const Length bits = std::min<Length>(2 * g.total_length(), 24);
  const Tick cap = 10'000'000;
  const Tick estimate = Tick{4} << bits;
  return std::min(estimate, cap);
}

std::int64_t Timeline::n_at(Tick t) const {
  if (t < 0) throw std::out_of_range("negative tick");
  if (t <= last_tick()) return total[t];
  if (!complete) throw std::out_of_range("tick beyond an incomplete timeline");
  return n_stable;
}

std::int64_t Timeline::edge_at(Tick t, EdgeId e) const {
  if (t < 0) throw std::out_of_range("negative tick");
  if (t <= last_tick()) return per_edge[t].at(e);
  if (!complete) throw std::out_of_range("tick beyond an incomplete timeline");
  return per_edge.back().at(e);
}

bool Timeline::is_collision(Tick t) const { return std::binary_search(coll.begin(), coll.end(), t); }

namespace {

void record(Timeline& tl, const MetricGraph& g, const SimState& s, std::vector<std::pair<VertexId, int>> hits) {
  tl.total.push_back(s.point_count());
  std::vector<std::int64_t> edges(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges[e] = s.edge_count(e);
  tl.per_edge.push_back(std::move(edges));
  const Tick t = static_cast<Tick>(tl.total.size()) - 1;
  if (std::any_of(hits.begin(), hits.end(), [](const auto& h) { return h.second >= 2; })) tl.coll.push_back(t);
  tl.arrivals.push_back(std::move(hits));
}

}  // namespace

Timeline simulate(const DPSystem& system, SimOptions options) {
  const MetricGraph& g = system.graph;
  const Tick cap = options.max_ticks > 0 ? options.max_ticks : default_max_ticks(g);
  Timeline tl;
  tl.scale = g.scale();

  SimState state = initial_state(system);
  std::vector<std::pair<VertexId, int>> initial_hits;
  for (VertexId p : system.points) initial_hits.emplace_back(p, 1);
  record(tl, g, state, std::move(initial_hits));

  std::unordered_map<std::string, Tick> seen;
  seen.emplace(state.key(), 0);
  for (Tick t = 1;; ++t) {
    if (t > cap) {
      throw SimulationLimitExceeded("no state recurrence within " + std::to_string(cap) + " ticks", std::move(tl));
    }
    StepResult r = step(state, g);
    std::vector<std::pair<VertexId, int>> hits;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (r.arrivals[v] > 0) hits.emplace_back(v, r.arrivals[v]);
    state = std::move(r.next);
    record(tl, g, state, std::move(hits));
    const auto [it, inserted] = seen.emplace(state.key(), t);
    if (!inserted) {
      tl.first_repeat = it->second;
      tl.period = t - it->second;
      break;
    }
  }

  for (Tick t = 1; t <= tl.last_tick(); ++t)
    if (tl.total[t] > tl.total[t - 1]) tl.t_s = t;
  tl.n_stable = tl.total.back();
  for (Tick t = tl.first_repeat; t <= tl.last_tick(); ++t)
    if (tl.total[t] != tl.n_stable) throw std::logic_error("point count not constant on the recurrent cycle");
  tl.complete = true;
  return tl;
}

GrowthComparison compare_growth(const Timeline& a, const Timeline& b) {
  if (!a.complete || !b.complete) throw std::invalid_argument("compare_growth needs complete timelines");
  if (a.scale != b.scale) throw std::invalid_argument("compare_growth needs timelines in the same time unit");
  GrowthComparison out;
  out.horizon = std::max(a.last_tick(), b.last_tick());
  for (Tick t = 0; t <= out.horizon; ++t)
    if (a.n_at(t) > b.n_at(t)) out.violations.push_back(t);
  out.dominated = out.violations.empty();
  return out;
}

}  // namespace dpgraph
