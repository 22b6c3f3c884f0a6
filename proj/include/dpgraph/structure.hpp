#pragma once

#include <vector>

#include "dpgraph/graph.hpp"

namespace dpgraph {

struct Block {
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;
  /// Parallel pairs count as 2-cycles and self-loops as 1-cycles.
  bool is_bridge() const { return edges.size() == 1 && vertices.size() == 2; }
  bool is_simple_cycle() const { return edges.size() == vertices.size(); }
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  std::vector<EdgeId> bridges;
  /// block index per edge
  std::vector<int> block_of_edge;
  /// For every vertex, the simple-cycle blocks that contain it.
  std::vector<std::vector<int>> cycle_blocks_of_vertex;
};

BlockDecomposition blocks_bridges(const MetricGraph& g);

bool is_bead(const MetricGraph& g);
bool is_bead(const BlockDecomposition& d);

/// `handle` is a vertex sequence. Throws std::invalid_argument if it is not a
/// path of the graph.
bool is_bead_broom(const MetricGraph& g, const std::vector<VertexId>& handle);

/// Leaves plus vertices of terminal cycles away from their single bridge. A
/// graph that is one bare cycle returns all of its vertices. Throws on
/// non-bead input.
std::vector<VertexId> bead_leaves(const MetricGraph& g);

bool is_tree(const MetricGraph& g);
/// Connected path graph (every degree <= 2, acyclic).
bool is_linear(const MetricGraph& g);

/// Every simple cycle of the multigraph as an arc sequence starting at its
/// lowest vertex. Parallel edge pairs show up as 2-cycles.
std::vector<std::vector<ArcId>> simple_cycles(const MetricGraph& g);

/// Vertices reachable from `from` when edge `removed` is deleted.
std::vector<bool> reachable_without(const MetricGraph& g, VertexId from, EdgeId removed);

}  // namespace dpgraph
