#include "dpgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace dpgraph {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid graph";
  for (const auto& l : lines) out += "; " + l;
  return out;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) throw std::overflow_error("length denominators too large");
  return out;
}

}  // namespace

InvalidGraph::InvalidGraph(std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)), violations_(std::move(violations)) {}

MetricGraph::MetricGraph(int vertex_count, std::vector<Edge> edges, GraphOptions options) : edges_(std::move(edges)) {
  if (vertex_count < 0) throw InvalidGraph({"negative vertex count"});
  names_.reserve(vertex_count);
  for (int i = 0; i < vertex_count; ++i) names_.push_back("v" + std::to_string(i));
  build_adjacency(options);
}

MetricGraph::MetricGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges, GraphOptions options,
                         Rational scale)
    : names_(std::move(vertex_names)), edges_(std::move(edges)), scale_(scale) {
  build_adjacency(options);
}

MetricGraph MetricGraph::from_edges(int vertex_count,
                                    const std::vector<std::tuple<VertexId, VertexId, Length>>& edges,
                                    GraphOptions options) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v, len] : edges) list.push_back(Edge{"", u, v, len});
  return MetricGraph(vertex_count, std::move(list), options);
}

void MetricGraph::build_adjacency(GraphOptions options) {
  allow_loops_ = options.allow_loops;
  std::vector<std::string> violations;
  const int n = vertex_count();
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.id.empty()) e.id = "e" + std::to_string(i + 1);
    if (!seen_ids.insert(e.id).second) violations.push_back("duplicate edge id '" + e.id + "'");
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      violations.push_back("dangling endpoint on edge '" + e.id + "'");
      continue;
    }
    if (e.length <= 0) violations.push_back("non-positive length on edge '" + e.id + "'");
    if (e.u == e.v && !options.allow_loops) violations.push_back("self-loop on edge '" + e.id + "'");
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size())
    violations.push_back("duplicate vertex name");
  if (!violations.empty()) throw InvalidGraph(std::move(violations));

  out_arcs_.assign(n, {});
  for (EdgeId e = 0; e < edge_count(); ++e) {
    out_arcs_[edges_[e].u].push_back(2 * e);
    out_arcs_[edges_[e].v].push_back(2 * e + 1);
  }
  if (options.require_connected && !is_connected()) throw InvalidGraph({"graph is not connected"});
}

std::optional<VertexId> MetricGraph::find_vertex(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

std::optional<EdgeId> MetricGraph::find_edge(const std::string& id) const {
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

VertexId MetricGraph::tail(ArcId a) const {
  const Edge& e = edges_.at(edge_of(a));
  return (a & 1) ? e.v : e.u;
}

VertexId MetricGraph::head(ArcId a) const {
  const Edge& e = edges_.at(edge_of(a));
  return (a & 1) ? e.u : e.v;
}

int MetricGraph::max_degree() const {
  int best = 0;
  for (VertexId v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

Length MetricGraph::total_length() const {
  Length sum = 0;
  for (const auto& e : edges_) sum += e.length;
  return sum;
}

std::vector<Length> MetricGraph::edge_lengths() const {
  std::vector<Length> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.length);
  return out;
}

int MetricGraph::component_count() const {
  const int n = vertex_count();
  std::vector<int> comp(n, -1);
  int count = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<VertexId> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (ArcId a : out_arcs_[x]) {
        const VertexId y = head(a);
        if (comp[y] < 0) {
          comp[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  return count;
}

bool MetricGraph::is_connected() const { return vertex_count() > 0 && component_count() == 1; }

DPSystem::DPSystem(MetricGraph g, std::vector<VertexId> pts) : graph(std::move(g)), points(std::move(pts)) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<std::string> violations;
  if (points.empty()) violations.push_back("system has no initial points");
  for (VertexId p : points)
    if (p < 0 || p >= graph.vertex_count()) violations.push_back("initial point outside the graph");
  if (!graph.is_connected()) violations.push_back("graph is not connected");
  if (!violations.empty()) throw InvalidGraph(std::move(violations));
}

std::vector<std::string> validate(const RawGraph& raw, GraphOptions options) {
  std::vector<std::string> violations;
  std::map<std::string, int> index;
  for (const auto& name : raw.vertices)
    if (!index.emplace(name, static_cast<int>(index.size())).second)
      violations.push_back("duplicate vertex '" + name + "'");
  std::set<std::string> ids;
  for (const auto& e : raw.edges) {
    if (!e.id.empty() && !ids.insert(e.id).second) violations.push_back("duplicate edge id '" + e.id + "'");
    const bool has_u = index.count(e.u) > 0;
    const bool has_v = index.count(e.v) > 0;
    if (!has_u || !has_v)
      violations.push_back("dangling endpoint on edge '" + e.id + "' (" + (has_u ? e.v : e.u) + ")");
    if (e.length <= Rational(0)) violations.push_back("non-positive length on edge '" + e.id + "'");
    if (e.u == e.v && !options.allow_loops) violations.push_back("self-loop on edge '" + e.id + "'");
  }
  for (const auto& p : raw.points)
    if (!index.count(p)) violations.push_back("initial point '" + p + "' is not a vertex");
  if (violations.empty() && options.require_connected) {
    std::vector<int> parent(raw.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : raw.edges) parent[find(index[e.u])] = find(index[e.v]);
    std::set<int> roots;
    for (std::size_t i = 0; i < raw.vertices.size(); ++i) roots.insert(find(static_cast<int>(i)));
    if (roots.size() != 1) violations.push_back("graph is not connected");
  }
  return violations;
}

EdgeMultiset scale_to_integer(const std::vector<Rational>& lengths) {
  EdgeMultiset out;
  out.original = lengths;
  std::int64_t common_den = 1;
  for (const auto& r : lengths) {
    if (r <= Rational(0)) throw std::invalid_argument("edge length must be positive, got " + r.str());
    common_den = lcm_checked(common_den, r.den());
  }
  std::int64_t g = 0;
  std::vector<std::int64_t> ints;
  ints.reserve(lengths.size());
  for (const auto& r : lengths) {
    const std::int64_t v = (r * Rational(common_den)).num();
    ints.push_back(v);
    g = std::gcd(g, v);
  }
  if (g == 0) g = 1;
  for (auto v : ints) out.scaled.push_back(v / g);
  out.factor = Rational(g, common_den);
  return out;
}

std::vector<Rational> parse_length_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(Rational::parse(item));
  }
  if (out.empty()) throw ParseError("empty edge list '" + text + "'");
  return out;
}

MetricGraph build_graph(const RawGraph& raw, GraphOptions options) {
  auto violations = validate(raw, options);
  if (!violations.empty()) throw InvalidGraph(std::move(violations));
  std::vector<Rational> lengths;
  for (const auto& e : raw.edges) lengths.push_back(e.length);
  const EdgeMultiset scaled = lengths.empty() ? EdgeMultiset{} : scale_to_integer(lengths);
  std::map<std::string, int> index;
  for (const auto& name : raw.vertices) index.emplace(name, static_cast<int>(index.size()));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    const auto& e = raw.edges[i];
    edges.push_back(Edge{e.id, index.at(e.u), index.at(e.v), scaled.scaled[i]});
  }
  return MetricGraph(raw.vertices, std::move(edges), options, scaled.factor);
}

DPSystem build_system(const RawGraph& raw, GraphOptions options) {
  MetricGraph g = build_graph(raw, options);
  std::vector<VertexId> pts;
  for (const auto& p : raw.points) pts.push_back(*g.find_vertex(p));
  return DPSystem(std::move(g), std::move(pts));
}

std::optional<Length> shortest_distance(const MetricGraph& g, VertexId u, VertexId v) {
  const int n = g.vertex_count();
  if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("vertex out of range");
  std::vector<std::optional<Length>> dist(n);
  using Item = std::pair<Length, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[u] = 0;
  queue.emplace(0, u);
  while (!queue.empty()) {
    const auto [d, x] = queue.top();
    queue.pop();
    if (d != *dist[x]) continue;
    if (x == v) return d;
    for (ArcId a : g.out_arcs(x)) {
      const VertexId y = g.head(a);
      const Length nd = d + g.length(a);
      if (!dist[y] || nd < *dist[y]) {
        dist[y] = nd;
        queue.emplace(nd, y);
      }
    }
  }
  return std::nullopt;
}

bool is_valid_walk(const MetricGraph& g, const Walk& w) {
  if (w.start < 0 || w.start >= g.vertex_count()) return false;
  VertexId at = w.start;
  for (ArcId a : w.arcs) {
    if (a < 0 || a >= g.arc_count() || g.tail(a) != at) return false;
    at = g.head(a);
  }
  return true;
}

VertexId walk_end(const MetricGraph& g, const Walk& w) { return w.arcs.empty() ? w.start : g.head(w.arcs.back()); }

Length walk_length(const MetricGraph& g, const Walk& w) {
  Length sum = 0;
  for (ArcId a : w.arcs) sum += g.length(a);
  return sum;
}

Walk walk_from_vertices(const MetricGraph& g, const std::vector<VertexId>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("walk needs at least one vertex");
  Walk w{vertices.front(), {}};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    std::optional<ArcId> found;
    for (ArcId a : g.out_arcs(vertices[i - 1]))
      if (g.head(a) == vertices[i]) {
        found = a;
        break;
      }
    if (!found)
      throw std::invalid_argument("vertices " + g.name(vertices[i - 1]) + " and " + g.name(vertices[i]) +
                                  " are not adjacent");
    w.arcs.push_back(*found);
  }
  return w;
}

std::vector<VertexId> walk_vertices(const MetricGraph& g, const Walk& w) {
  std::vector<VertexId> out{w.start};
  for (ArcId a : w.arcs) out.push_back(g.head(a));
  return out;
}

}  // namespace dpgraph
