#include "dpgraph/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dpgraph/structure.hpp"

#ifndef DPGRAPH_VERSION
#define DPGRAPH_VERSION "dev"
#endif

namespace dpgraph {

std::string version() { return std::string("dpgraph ") + DPGRAPH_VERSION; }

namespace {

std::string as_length(const Json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number_float()) return value.dump();
  throw ParseError(where + ": length must be a string or number");
}

std::string as_name(const Json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  throw ParseError(where + ": expected a vertex name");
}

std::string user_time(const Timeline& tl, Tick t) { return (tl.scale * Rational(t)).str(); }

}  // namespace

RawGraph parse_graph_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph JSON must be an object");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("graph JSON needs an \"edges\" array");
  RawGraph raw;
  std::set<std::string> known;
  if (doc.contains("vertices")) {
    if (!doc["vertices"].is_array()) throw ParseError("\"vertices\" must be an array");
    for (const auto& v : doc["vertices"]) {
      raw.vertices.push_back(as_name(v, "vertices"));
      known.insert(raw.vertices.back());
    }
  }
  const bool infer_vertices = !doc.contains("vertices");
  int index = 0;
  for (const auto& e : doc["edges"]) {
    ++index;
    const std::string where = "edge " + std::to_string(index);
    if (!e.is_object() || !e.contains("u") || !e.contains("v")) throw ParseError(where + ": needs \"u\" and \"v\"");
    RawEdge edge;
    edge.id = e.contains("id") ? as_name(e["id"], where) : "e" + std::to_string(index);
    edge.u = as_name(e["u"], where);
    edge.v = as_name(e["v"], where);
    const Json& len = e.contains("len") ? e["len"] : (e.contains("length") ? e["length"] : Json());
    if (len.is_null()) throw ParseError(where + ": missing \"len\"");
    edge.length = Rational::parse(as_length(len, where));
    if (infer_vertices)
      for (const auto& name : {edge.u, edge.v})
        if (known.insert(name).second) raw.vertices.push_back(name);
    raw.edges.push_back(std::move(edge));
  }
  if (doc.contains("points")) {
    if (!doc["points"].is_array()) throw ParseError("\"points\" must be an array");
    for (const auto& p : doc["points"]) raw.points.push_back(as_name(p, "points"));
  }
  return raw;
}

RawGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str());
}

Json graph_to_json(const MetricGraph& g, const std::vector<VertexId>& points) {
  Json out;
  out["vertices"] = g.names();
  Json edges = Json::array();
  for (const Edge& e : g.edges())
    edges.push_back({{"id", e.id}, {"u", g.name(e.u)}, {"v", g.name(e.v)}, {"len", g.to_user(e.length).str()}});
  out["edges"] = std::move(edges);
  Json pts = Json::array();
  for (VertexId p : points) pts.push_back(g.name(p));
  out["points"] = std::move(pts);
  return out;
}

std::string arc_name(const MetricGraph& g, ArcId a) { return (a & 1 ? "~" : "") + g.edge(edge_of(a)).id; }

ArcId parse_arc(const MetricGraph& g, const std::string& name) {
  const bool back = !name.empty() && name[0] == '~';
  const auto e = g.find_edge(back ? name.substr(1) : name);
  if (!e) throw ParseError("unknown edge in arc " + name);
  return 2 * *e + (back ? 1 : 0);
}

Json walk_to_json(const MetricGraph& g, const Walk& w) {
  Json arcs = Json::array();
  for (ArcId a : w.arcs) arcs.push_back(arc_name(g, a));
  Json vertices = Json::array();
  for (VertexId v : walk_vertices(g, w)) vertices.push_back(g.name(v));
  return {{"start", g.name(w.start)}, {"arcs", arcs}, {"vertices", vertices}, {"length", g.to_user(walk_length(g, w)).str()}};
}

bool collision_at(const Timeline& tl, Tick t) {
  if (t <= tl.last_tick() || tl.period == 0) return tl.is_collision(t);
  return tl.is_collision(tl.first_repeat + (t - tl.first_repeat) % tl.period);
}

std::string timeline_csv(const Timeline& tl, const MetricGraph& g) {
  std::ostringstream out;
  out << "tick,N,coll";
  for (const Edge& e : g.edges()) out << ',' << e.id;
  out << '\n';
  const Tick last = tl.t_s + tl.period;
  for (Tick t = 0; t <= last; ++t) {
    out << user_time(tl, t) << ',' << tl.n_at(t) << ',' << (collision_at(tl, t) ? 1 : 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) out << ',' << tl.edge_at(t, e);
    out << '\n';
  }
  out << "# t_s=" << user_time(tl, tl.t_s) << " period=" << user_time(tl, tl.period) << " N_stable=" << tl.n_stable
      << '\n';
  return out.str();
}

Json timeline_to_json(const Timeline& tl, const MetricGraph& g) {
  Json rows = Json::array();
  for (Tick t = 0; t <= tl.t_s + tl.period; ++t) {
    Json per_edge;
    for (EdgeId e = 0; e < g.edge_count(); ++e) per_edge[g.edge(e).id] = tl.edge_at(t, e);
    rows.push_back({{"tick", user_time(tl, t)}, {"N", tl.n_at(t)}, {"coll", collision_at(tl, t)}, {"edges", per_edge}});
  }
  return {{"t_s", user_time(tl, tl.t_s)},
          {"period", user_time(tl, tl.period)},
          {"N_stable", tl.n_stable},
          {"rows", rows}};
}

Json classes_to_json(const MetricGraph& g, const OracleResult& oracle) {
  Json out;
  for (const EdgePlaces& table : oracle.tables) {
    Json places = Json::array();
    for (const Place& p : table.places) {
      Json item{{"endpointResidue", g.to_user(p.residue_a).str()},
                {"pairedResidue", g.to_user(p.residue_b).str()},
                {"reachable", p.saturation.has_value()}};
      if (p.saturation) {
        item["saturation"] = g.to_user(*p.saturation).str();
        item["arrival"] = g.name(p.arrival);
        item["witnessWalk"] = walk_to_json(g, p.witness)["arcs"];
      } else {
        item["saturation"] = nullptr;
        item["witnessWalk"] = nullptr;
      }
      places.push_back(std::move(item));
    }
    out[g.edge(table.edge).id] = std::move(places);
  }
  return out;
}

Json witness_to_json(const Witness& w) {
  return {{"graph", graph_to_json(w.system)},
          {"t_s", w.system.graph.to_user(w.t_s).str()},
          {"N_stable", w.n_stable},
          {"is_bead", w.is_bead},
          {"max_degree", w.max_degree},
          {"point_at_terminal", w.point_at_terminal},
          {"is_linear", w.is_linear},
          {"is_tree", w.is_tree}};
}

Json search_to_json(const SearchResult& r) {
  Json lengths = Json::array();
  for (const Rational& l : r.edges.original) lengths.push_back(l.str());
  Json witnesses = Json::array();
  for (const Witness& w : r.witnesses) witnesses.push_back(witness_to_json(w));
  Json per_graph = Json::array();
  for (const GraphStats& s : r.per_graph)
    per_graph.push_back({{"canonical", s.canonical}, {"best_t_s", (r.edges.factor * Rational(s.best_ts)).str()}});
  Json out{{"version", version()},
           {"edges", lengths},
           {"max_ts", r.max_ts().str()},
           {"tree_max_ts", (r.edges.factor * Rational(r.tree_max_ts)).str()},
           {"graphs", r.graphs},
           {"partitions", r.partitions},
           {"systems", r.systems}};
  if (r.multi_point_max) out["multi_point_max_ts"] = (r.edges.factor * Rational(*r.multi_point_max)).str();
  out["witnesses"] = std::move(witnesses);
  out["per_graph"] = std::move(per_graph);
  return out;
}

Json theorem_to_json(const TheoremReport& r) {
  Json out{{"version", version()}, {"verdict", r.verdict}};
  out["witness"] = r.witness ? witness_to_json(*r.witness) : Json();
  out["search"] = search_to_json(r.search);
  return out;
}

Json corollary_to_json(const CorollaryReport& r) {
  Json out{{"version", version()},
           {"found", r.found},
           {"candidates", r.candidates},
           {"input", graph_to_json(r.input)},
           {"input_timeline", timeline_to_json(r.input_timeline, r.input.graph)}};
  if (r.linear) {
    out["linear"] = graph_to_json(*r.linear);
    out["placement"] = r.placement;
    out["linear_timeline"] = timeline_to_json(*r.linear_timeline, r.linear->graph);
  }
  return out;
}

Json surgery_to_json(const SurgeryReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  Json out{{"version", version()},
           {"operation", r.operation},
           {"parameters", params},
           {"verdict", r.held ? "held" : "violated"},
           {"diagnostics", r.diagnostics},
           {"input", graph_to_json(r.input)},
           {"output", graph_to_json(r.output)}};
  if (r.before.complete) out["before"] = timeline_to_json(r.before, r.input.graph);
  if (r.after.complete) out["after"] = timeline_to_json(r.after, r.output.graph);
  if (r.walk_after) out["walk_after"] = walk_to_json(r.output.graph, *r.walk_after);
  return out;
}

Json conjecture_to_json(const std::vector<ConjectureRow>& rows) {
  Json table = Json::array();
  for (const ConjectureRow& row : rows) {
    Json lengths = Json::array();
    for (const Rational& l : row.edges.original) lengths.push_back(l.str());
    table.push_back({{"edges", lengths},
                     {"max_ts", (row.edges.factor * Rational(row.max_ts)).str()},
                     {"linear_ts", (row.edges.factor * Rational(row.linear_ts)).str()},
                     {"ratio", row.ratio ? Json(row.ratio->str()) : Json("inf")},
                     {"flagged", row.flagged}});
  }
  return {{"version", version()}, {"rows", table}};
}

std::string render_dot(const MetricGraph& g, const std::vector<VertexId>& points, const std::vector<EdgeId>& highlight) {
  const std::set<VertexId> point_set(points.begin(), points.end());
  const std::set<EdgeId> bold(highlight.begin(), highlight.end());
  std::ostringstream out;
  out << "graph dp {\n  node [shape=circle];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << g.name(v) << "\"";
    if (point_set.count(v)) out << " [shape=doublecircle, style=filled, fillcolor=black, fontcolor=white]";
    out << ";\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  \"" << g.name(e.u) << "\" -- \"" << g.name(e.v) << "\" [label=\"" << e.id
        << " len=" << g.to_user(e.length).str() << "\"";
    if (bold.count(static_cast<EdgeId>(&e - g.edges().data()))) out << ", penwidth=3, color=gray40";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace dpgraph
