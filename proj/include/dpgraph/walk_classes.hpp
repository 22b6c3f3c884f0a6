#pragma once

#include <optional>
#include <vector>

#include "dpgraph/graph.hpp"

namespace dpgraph {

/// One point-place of an edge {a, b} of length L: the class of walks ending
/// at a with length = residue_a (mod 2L), merged with walks ending at b with
/// length = residue_a + L (mod 2L).
struct Place {
  int residue_a = 0;
  int residue_b = 0;
  /// Shortest walk length in the class; nullopt when the class is empty.
  std::optional<Length> saturation;
  /// Endpoint where the shortest walk arrives (edge.u or edge.v).
  VertexId arrival = -1;
  /// One walk from a source realizing `saturation`.
  Walk witness;
};

struct EdgePlaces {
  EdgeId edge = 0;
  Length length = 0;
  /// Minimal walk length to each endpoint per residue mod 2L.
  std::vector<std::optional<Length>> dist_a;
  std::vector<std::optional<Length>> dist_b;
  /// Indexed by residue_a.
  std::vector<Place> places;

  int reachable_count() const;
  /// Places saturated no later than t.
  int saturated_by(Length t) const;
};

/// Point-places of edge e for points starting at `sources`, via multi-source
/// shortest paths over (vertex, length mod 2L).
EdgePlaces place_table(const MetricGraph& g, const std::vector<VertexId>& sources, EdgeId e);

struct OracleResult {
  Length t_s = 0;
  std::vector<std::int64_t> per_edge;
  std::int64_t n_stable = 0;
  EdgeId lst_edge = 0;
  Walk lst_walk;
  std::vector<EdgePlaces> tables;

  /// Total saturated places at tick t; equals the simulated N(t).
  std::int64_t n_at(Length t) const;
};

OracleResult stabilization_oracle(const MetricGraph& g, const std::vector<VertexId>& sources);
inline OracleResult stabilization_oracle(const DPSystem& s) { return stabilization_oracle(s.graph, s.points); }

}  // namespace dpgraph
