#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dpgraph/rational.hpp"

namespace dpgraph {

using Length = std::int64_t;

/// Dense vertex index. Names live in MetricGraph for I/O only.
using VertexId = int;
/// Edge index. Arcs of edge e are 2e (u -> v) and 2e + 1 (v -> u).
using EdgeId = int;
using ArcId = int;

constexpr ArcId reverse_arc(ArcId a) { return a ^ 1; }
constexpr EdgeId edge_of(ArcId a) { return a >> 1; }
constexpr ArcId forward_arc(EdgeId e) { return 2 * e; }

struct Edge {
  std::string id;
  VertexId u = 0;
  VertexId v = 0;
  Length length = 1;
};

struct GraphOptions {
  bool allow_loops = false;
  bool require_connected = false;
};

/// Graph exactly as read from user input, before validation and scaling.
struct RawEdge {
  std::string id;
  std::string u;
  std::string v;
  Rational length;
};

struct RawGraph {
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::vector<std::string> points;
};

class InvalidGraph : public std::runtime_error {
 public:
  explicit InvalidGraph(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Undirected metric multigraph with positive integer edge lengths.
/// Immutable once built; every mutating surgery returns a new graph.
class MetricGraph {
 public:
  MetricGraph() = default;

  /// Builds a graph on vertices named v0..v{n-1}; edges without ids get
  /// e1..em. Throws InvalidGraph when an invariant is violated.
  MetricGraph(int vertex_count, std::vector<Edge> edges, GraphOptions options = {});
  MetricGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges, GraphOptions options = {},
              Rational scale = Rational(1));

  /// Convenience for tests: unit-named vertices, lengths and endpoint pairs.
  static MetricGraph from_edges(int vertex_count, const std::vector<std::tuple<VertexId, VertexId, Length>>& edges,
                                GraphOptions options = {});

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int arc_count() const { return 2 * edge_count(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& id) const;

  VertexId tail(ArcId a) const;
  VertexId head(ArcId a) const;
  Length length(ArcId a) const { return edges_[edge_of(a)].length; }
  /// Arcs leaving v, in edge order.
  std::span<const ArcId> out_arcs(VertexId v) const { return out_arcs_.at(v); }
  int degree(VertexId v) const { return static_cast<int>(out_arcs_.at(v).size()); }
  int max_degree() const;
  Length total_length() const;
  std::vector<Length> edge_lengths() const;
  bool allow_loops() const { return allow_loops_; }

  /// Multiplier taking internal integer lengths back to user units.
  const Rational& scale() const { return scale_; }
  Rational to_user(Length scaled) const { return scale_ * Rational(scaled); }

  bool is_connected() const;
  /// Number of connected components; isolated vertices count.
  int component_count() const;

 private:
  void build_adjacency(GraphOptions options);

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<ArcId>> out_arcs_;
  Rational scale_{1};
  bool allow_loops_ = false;
};

/// Initial configuration: a connected graph plus the vertices holding points.
struct DPSystem {
  MetricGraph graph;
  std::vector<VertexId> points;

  DPSystem() = default;
  DPSystem(MetricGraph g, std::vector<VertexId> pts);
};

/// Multiset of user lengths together with its integer normalization.
struct EdgeMultiset {
  std::vector<Rational> original;
  std::vector<Length> scaled;
  Rational factor{1};
};

/// Arc sequence starting at `start`; an empty sequence is the zero-length walk.
struct Walk {
  VertexId start = 0;
  std::vector<ArcId> arcs;

  friend bool operator==(const Walk&, const Walk&) = default;
};

/// Lists every violated invariant of a raw graph. Empty means valid.
std::vector<std::string> validate(const RawGraph& raw, GraphOptions options = {});

/// Validates and scales a raw graph into integer lengths with gcd 1.
MetricGraph build_graph(const RawGraph& raw, GraphOptions options = {});
/// Same, additionally resolving the initial point list.
DPSystem build_system(const RawGraph& raw, GraphOptions options = {});

/// Scales positive rationals to coprime integers; original = scaled * factor.
EdgeMultiset scale_to_integer(const std::vector<Rational>& lengths);
/// Parses "1,1,2" or "1/2, 0.5, 1".
std::vector<Rational> parse_length_list(const std::string& text);

std::optional<Length> shortest_distance(const MetricGraph& g, VertexId u, VertexId v);

bool is_valid_walk(const MetricGraph& g, const Walk& w);
VertexId walk_end(const MetricGraph& g, const Walk& w);
Length walk_length(const MetricGraph& g, const Walk& w);
/// Builds a walk from a vertex sequence, taking the lowest-index edge between
/// consecutive vertices. Throws std::invalid_argument if two are not adjacent.
Walk walk_from_vertices(const MetricGraph& g, const std::vector<VertexId>& vertices);
std::vector<VertexId> walk_vertices(const MetricGraph& g, const Walk& w);

}  // namespace dpgraph
