#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpgraph/graph.hpp"
#include "dpgraph/simulator.hpp"

namespace dpgraph {

/// Arc multiplicities of a walk and the derived per-edge parity.
struct Multisupport {
  std::vector<int> arc_multiplicity;
  std::vector<int> edge_multiplicity;
  std::vector<bool> odd;
  /// One arc per odd edge, two per even edge the walk uses.
  std::vector<ArcId> reduced;
  int entries = 0;
};

Multisupport classify_parity(const MetricGraph& g, const Walk& w);

/// Fleury reordering of the walk's multisupport that runs back and forth on
/// an edge whenever it can. Keeps start, end, length and edge multiplicities.
Walk greedy_reorder(const MetricGraph& g, const Walk& w);

/// Arc sequence of the cycle through `vertices` (first vertex not repeated).
/// Consecutive vertices use the lowest-index edge not used yet.
std::vector<ArcId> cycle_from_vertices(const MetricGraph& g, const std::vector<VertexId>& vertices);

/// Detaches the edge of `split_arc` from head(split_arc) onto a fresh vertex.
/// The new vertex is the last one of the result.
MetricGraph cut_cycle(const MetricGraph& g, const std::vector<ArcId>& cycle, ArcId split_arc);

/// Removes the bridge tail(bridge) -> head(bridge) and reconnects the part
/// hanging from head(bridge) to `attach_to` with an edge of the same length
/// and id.
MetricGraph relocate_subgraph(const MetricGraph& g, ArcId bridge, VertexId attach_to);

/// Vertices on the head side of `bridge` once it is removed.
std::vector<bool> hanging_side(const MetricGraph& g, ArcId bridge);

struct SurgeryReport {
  std::string operation;
  std::map<std::string, std::string> parameters;
  DPSystem input;
  DPSystem output;
  Timeline before;
  Timeline after;
  bool held = false;
  std::vector<std::string> diagnostics;
  /// Walk of the LST length in the output, when one was required.
  std::optional<Walk> walk_after;
};

/// Builds a bead system that keeps an LST walk of the input. Expects a
/// single initial point where `lst_walk` starts and `lst_edge` being the edge
/// whose endpoint the walk reaches.
SurgeryReport to_bead(const DPSystem& system, const Walk& lst_walk, EdgeId lst_edge);
/// Uses the oracle's LST edge and walk.
SurgeryReport to_bead(const DPSystem& system);

/// Moves subgraphs hanging from vertices of degree >= 4 onto bead leaves
/// past the stabilization edge until every degree is at most 3.
SurgeryReport reduce_degrees(const DPSystem& system);

/// Wraps a plain graph rewrite (cut or relocate) into a report; `held`
/// encodes the growth check appropriate for that rewrite.
SurgeryReport cut_cycle_report(const DPSystem& system, const std::vector<ArcId>& cycle, ArcId split_arc);
SurgeryReport relocate_report(const DPSystem& system, ArcId bridge, VertexId attach_to);

/// Walk from `from` of exactly `length` ending at any vertex in `targets`.
std::optional<Walk> walk_of_length(const MetricGraph& g, VertexId from, const std::vector<VertexId>& targets,
                                   Length length);

}  // namespace dpgraph
