#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dpgraph/graph.hpp"
#include "dpgraph/search.hpp"
#include "dpgraph/simulator.hpp"
#include "dpgraph/surgery.hpp"
#include "dpgraph/walk_classes.hpp"

namespace dpgraph {

using Json = nlohmann::ordered_json;

/// Version string embedded in every report.
std::string version();

/// Reads {"vertices":[...],"edges":[{"id","u","v","len"}],"points":[...]}.
/// Missing vertices are taken from the edges in order of appearance, missing
/// ids become e1, e2, ... Throws ParseError on malformed input.
RawGraph parse_graph_json(const std::string& text);
RawGraph read_graph_file(const std::string& path);

Json graph_to_json(const MetricGraph& g, const std::vector<VertexId>& points = {});
inline Json graph_to_json(const DPSystem& s) { return graph_to_json(s.graph, s.points); }

/// Arc names: "e1" runs u -> v of edge e1, "~e1" runs back.
std::string arc_name(const MetricGraph& g, ArcId a);
ArcId parse_arc(const MetricGraph& g, const std::string& name);
Json walk_to_json(const MetricGraph& g, const Walk& w);

/// Rows for ticks 0 .. t_s + period, then a "# t_s=..." line.
std::string timeline_csv(const Timeline& tl, const MetricGraph& g);
Json timeline_to_json(const Timeline& tl, const MetricGraph& g);
bool collision_at(const Timeline& tl, Tick t);

Json classes_to_json(const MetricGraph& g, const OracleResult& oracle);
Json witness_to_json(const Witness& w);
Json search_to_json(const SearchResult& r);
Json theorem_to_json(const TheoremReport& r);
Json corollary_to_json(const CorollaryReport& r);
Json surgery_to_json(const SurgeryReport& r);
Json conjecture_to_json(const std::vector<ConjectureRow>& rows);

/// Graphviz text. Point vertices are doubled circles, highlighted edges bold.
std::string render_dot(const MetricGraph& g, const std::vector<VertexId>& points = {},
                       const std::vector<EdgeId>& highlight = {});

void write_text(const std::string& path, const std::string& text);

}  // namespace dpgraph
