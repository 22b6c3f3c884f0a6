#pragma once

#include <string>
#include <vector>

#include "dpgraph/graph.hpp"

namespace dpgraph {

constexpr int kCanonicalMaxVertices = 16;

/// Byte string equal for two graphs iff they are isomorphic as length-labeled
/// multigraphs. `vertex_colors`, when non-empty, must be preserved by the
/// isomorphism too (used to mark initial points). Throws std::length_error
/// above kCanonicalMaxVertices.
std::string canonical_form(const MetricGraph& g, const std::vector<int>& vertex_colors = {});

/// Canonical form of a system: the graph with point-holding vertices colored.
std::string canonical_form(const DPSystem& s);

/// Vertex order realizing canonical_form: position -> original vertex.
std::vector<VertexId> canonical_order(const MetricGraph& g, const std::vector<int>& vertex_colors = {});

}  // namespace dpgraph
