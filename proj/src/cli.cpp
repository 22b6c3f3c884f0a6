#include "dpgraph/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dpgraph/canonical.hpp"
#include "dpgraph/enumeration.hpp"
#include "dpgraph/io.hpp"
#include "dpgraph/search.hpp"
#include "dpgraph/structure.hpp"
#include "dpgraph/surgery.hpp"
#include "dpgraph/walk_classes.hpp"

namespace dpgraph {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

GraphOptions graph_options(const RunConfig& c) { return GraphOptions{c.allow_loops, !c.disconnected}; }

EdgeMultiset multiset_of(const std::string& text) { return scale_to_integer(parse_length_list(text)); }

/// The configured input as a system. An inline edge list means the path in
/// the given order with its point at the first vertex.
DPSystem load_system(const RunConfig& c) {
  if (!c.graph_path.empty() && !c.edges.empty()) throw UsageError("give either --graph or --edges, not both");
  if (!c.graph_path.empty()) {
    RawGraph raw = read_graph_file(c.graph_path);
    if (raw.points.empty()) throw UsageError(c.graph_path + ": no initial points given");
    return build_system(raw, graph_options(c));
  }
  if (!c.edges.empty()) {
    const EdgeMultiset e = multiset_of(c.edges);
    return DPSystem(path_graph(e.scaled, e.factor), {0});
  }
  throw UsageError(c.command + " needs --graph or --edges");
}

EdgeMultiset load_multiset(const RunConfig& c) {
  if (c.edges.empty()) throw UsageError(c.command + " needs --edges");
  if (!c.graph_path.empty()) throw UsageError("give either --graph or --edges, not both");
  return multiset_of(c.edges);
}

VertexId vertex_named(const MetricGraph& g, const std::string& name) {
  const auto v = g.find_vertex(name);
  if (!v) throw UsageError("unknown vertex " + name);
  return *v;
}

EdgeId edge_named(const MetricGraph& g, const std::string& id) {
  const auto e = g.find_edge(id);
  if (!e) throw UsageError("unknown edge " + id);
  return *e;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty())
    out << text;
  else
    write_text(c.output, text);
}

SearchOptions search_options(const RunConfig& c, int default_cap) {
  SearchOptions o;
  o.enumeration.allow_loops = c.allow_loops;
  o.enumeration.connected_only = !c.disconnected;
  o.enumeration.max_edges = c.max_edges > 0 ? c.max_edges : default_cap;
  o.multi_point = c.multi_point;
  o.jobs = c.jobs;
  return o;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const DPSystem s = load_system(c);
  const Timeline tl = simulate(s, SimOptions{c.max_ticks});
  const std::string format = c.format.empty() ? "csv" : c.format;
  if (format == "csv")
    emit(c, out, timeline_csv(tl, s.graph));
  else if (format == "json")
    emit(c, out, timeline_to_json(tl, s.graph).dump(2) + "\n");
  else
    emit(c, out, render_dot(s.graph, s.points, {stabilization_oracle(s).lst_edge}));
  return kExitOk;
}

int cmd_classes(const RunConfig& c, std::ostream& out) {
  const DPSystem s = load_system(c);
  const OracleResult oracle = stabilization_oracle(s);
  Json doc = classes_to_json(s.graph, oracle);
  emit(c, out, Json{{"version", version()},
                    {"t_s", s.graph.to_user(oracle.t_s).str()},
                    {"lst_edge", s.graph.edge(oracle.lst_edge).id},
                    {"lst_walk", walk_to_json(s.graph, oracle.lst_walk)},
                    {"classes", doc}}
                   .dump(2) +
                   "\n");
  return kExitOk;
}

int cmd_enumerate(const RunConfig& c, std::ostream& out) {
  const EdgeMultiset e = load_multiset(c);
  EnumerationOptions o{c.allow_loops, !c.disconnected, c.max_edges > 0 ? c.max_edges : 7};
  if (c.count_only) {
    std::int64_t n = 0;
    enumerate_graphs(e, o, [&](const MetricGraph&) { ++n; });
    emit(c, out, std::to_string(n) + "\n");
    return kExitOk;
  }
  std::string text;
  enumerate_graphs(e, o, [&](const MetricGraph& g) { text += graph_to_json(g).dump() + "\n"; });
  emit(c, out, text);
  return kExitOk;
}

int cmd_search(const RunConfig& c, std::ostream& out) {
  const SearchResult r = lstdp_search(load_multiset(c), search_options(c, 6));
  const std::string doc = search_to_json(r).dump(2) + "\n";
  if (!c.report.empty()) {
    write_text(c.report, doc);
    out << "max_ts=" << r.max_ts().str() << " witnesses=" << r.witnesses.size() << " graphs=" << r.graphs << "\n";
  } else {
    emit(c, out, doc);
  }
  return kExitOk;
}

int cmd_verify_theorem(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<EdgeMultiset> family;
  if (!c.alphabet.empty()) {
    if (c.max_m < 1) throw UsageError("--alphabet needs --max-m >= 1");
    std::vector<Length> letters;
    for (const Rational& r : parse_length_list(c.alphabet)) {
      if (!r.is_integer()) throw UsageError("--alphabet takes integer lengths");
      letters.push_back(r.num());
    }
    family = multisets_over(letters, c.max_m);
  } else {
    family.push_back(load_multiset(c));
  }
  bool all = true;
  Json results = Json::array();
  for (const EdgeMultiset& e : family) {
    const TheoremReport r = verify_theorem(e, search_options(c, 6));
    all = all && r.verdict;
    if (!r.verdict) {
      std::string lengths;
      for (const Rational& l : e.original) lengths += (lengths.empty() ? "" : ",") + l.str();
      err << "theorem check failed for {" << lengths << "}\n";
    }
    results.push_back(theorem_to_json(r));
  }
  const Json doc = family.size() == 1 ? results[0] : Json{{"version", version()}, {"all", all}, {"results", results}};
  if (!c.report.empty()) {
    write_text(c.report, doc.dump(2) + "\n");
    out << "verdict=" << (all ? "true" : "false") << " multisets=" << family.size() << "\n";
  } else {
    emit(c, out, doc.dump(2) + "\n");
  }
  return all ? kExitOk : kExitViolation;
}

int cmd_verify_corollary(const RunConfig& c, std::ostream& out) {
  const CorollaryReport r = verify_corollary(load_system(c));
  emit(c, out, corollary_to_json(r).dump(2) + "\n");
  return r.found ? kExitOk : kExitViolation;
}

int cmd_conjecture(const RunConfig& c, std::ostream& out) {
  std::vector<EdgeMultiset> family;
  for (const auto& f : c.family) family.push_back(multiset_of(f));
  if (!c.edges.empty()) family.push_back(multiset_of(c.edges));
  if (!c.alphabet.empty()) {
    std::vector<Length> letters;
    for (const Rational& r : parse_length_list(c.alphabet)) letters.push_back(r.num());
    if (c.max_m < 1) throw UsageError("--alphabet needs --max-m >= 1");
    for (auto& e : multisets_over(letters, c.max_m)) family.push_back(std::move(e));
  }
  if (family.empty()) throw UsageError("conjecture-scan needs --edges, --family or --alphabet");
  emit(c, out, conjecture_to_json(conjecture_scan(family, search_options(c, 6))).dump(2) + "\n");
  return kExitOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  if (c.other_path.empty()) throw UsageError("compare needs --other");
  const DPSystem a = load_system(c);
  RawGraph raw = read_graph_file(c.other_path);
  if (raw.points.empty()) throw UsageError(c.other_path + ": no initial points given");
  const DPSystem b = build_system(raw, graph_options(c));
  const Timeline ta = simulate(a, SimOptions{c.max_ticks});
  const Timeline tb = simulate(b, SimOptions{c.max_ticks});
  if (ta.scale != tb.scale) throw UsageError("the two graphs use different time units after scaling");
  const GrowthComparison g = compare_growth(ta, tb);
  Json violations = Json::array();
  for (Tick t : g.violations) violations.push_back((ta.scale * Rational(t)).str());
  emit(c, out, Json{{"version", version()},
                    {"dominated", g.dominated},
                    {"violations", violations},
                    {"t_s", (ta.scale * Rational(ta.t_s)).str()},
                    {"other_t_s", (tb.scale * Rational(tb.t_s)).str()},
                    {"N_stable", ta.n_stable},
                    {"other_N_stable", tb.n_stable}}
                   .dump(2) +
                   "\n");
  return kExitOk;
}

int cmd_render(const RunConfig& c, std::ostream& out) {
  const DPSystem s = load_system(c);
  std::vector<EdgeId> highlight;
  if (c.highlight.empty())
    highlight.push_back(stabilization_oracle(s).lst_edge);
  else
    for (const auto& id : split_list(c.highlight)) highlight.push_back(edge_named(s.graph, id));
  emit(c, out, render_dot(s.graph, s.points, highlight));
  return kExitOk;
}

Walk walk_option(const RunConfig& c, const MetricGraph& g) {
  if (!c.walk_arcs.empty()) {
    const auto names = split_list(c.walk_arcs);
    if (names.empty()) throw UsageError("empty --walk-arcs");
    Walk w;
    for (const auto& n : names) w.arcs.push_back(parse_arc(g, n));
    w.start = g.tail(w.arcs.front());
    if (!is_valid_walk(g, w)) throw UsageError("--walk-arcs is not a walk");
    return w;
  }
  std::vector<VertexId> seq;
  for (const auto& n : split_list(c.walk)) seq.push_back(vertex_named(g, n));
  if (seq.empty()) throw UsageError("a walk is required (--walk or --walk-arcs)");
  try {
    return walk_from_vertices(g, seq);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<ArcId> cycle_option(const RunConfig& c, const MetricGraph& g) {
  std::vector<VertexId> seq;
  for (const auto& n : split_list(c.cycle)) seq.push_back(vertex_named(g, n));
  if (seq.empty()) throw UsageError("cut-cycle needs --cycle");
  std::vector<ArcId> arcs;
  try {
    arcs = cycle_from_vertices(g, seq);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!c.split_edge.empty()) {
    // Swap in the requested edge for the step it can realize.
    const EdgeId e = edge_named(g, c.split_edge);
    const bool on_cycle = std::any_of(arcs.begin(), arcs.end(), [&](ArcId a) { return edge_of(a) == e; });
    if (!on_cycle) {
      const Edge& edge = g.edge(e);
      for (ArcId& a : arcs) {
        const VertexId x = g.tail(a), y = g.head(a);
        if ((edge.u == x && edge.v == y) || (edge.u == y && edge.v == x)) {
          a = edge.u == x ? 2 * e : 2 * e + 1;
          break;
        }
      }
    }
  }
  return arcs;
}

ArcId split_option(const RunConfig& c, const MetricGraph& g, const std::vector<ArcId>& cycle) {
  if (c.split_at.empty()) throw UsageError("cut-cycle needs --split-at");
  const VertexId at = vertex_named(g, c.split_at);
  std::optional<EdgeId> wanted;
  if (!c.split_edge.empty()) wanted = edge_named(g, c.split_edge);
  for (ArcId a : cycle) {
    if (wanted && edge_of(a) != *wanted) continue;
    if (g.head(a) == at) return a;
    if (wanted && g.tail(a) == at) return reverse_arc(a);
  }
  throw UsageError("no cycle edge enters " + c.split_at);
}

int cmd_transform(const RunConfig& c, std::ostream& out) {
  const DPSystem s = load_system(c);
  const MetricGraph& g = s.graph;
  SurgeryReport report;
  try {
    if (c.op == "cut-cycle") {
      const auto cycle = cycle_option(c, g);
      report = cut_cycle_report(s, cycle, split_option(c, g, cycle));
    } else if (c.op == "greedy-walk") {
      const Walk w = walk_option(c, g);
      const Walk greedy = greedy_reorder(g, w);
      const Multisupport ms = classify_parity(g, w);
      Json parity = Json::object();
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (ms.edge_multiplicity[e] > 0)
          parity[g.edge(e).id] = {{"multiplicity", ms.edge_multiplicity[e]}, {"parity", ms.odd[e] ? "odd" : "even"}};
      const bool held = walk_end(g, greedy) == walk_end(g, w) && walk_length(g, greedy) == walk_length(g, w) &&
                        classify_parity(g, greedy).edge_multiplicity == ms.edge_multiplicity;
      const Json doc{{"version", version()},
                     {"operation", "greedy-walk"},
                     {"verdict", held ? "held" : "violated"},
                     {"input", walk_to_json(g, w)},
                     {"output", walk_to_json(g, greedy)},
                     {"multisupport", parity}};
      if (!c.report.empty())
        write_text(c.report, doc.dump(2) + "\n");
      else
        emit(c, out, doc.dump(2) + "\n");
      return held ? kExitOk : kExitViolation;
    } else if (c.op == "to-bead") {
      if (s.points.size() != 1) throw UsageError("to-bead needs a single initial point");
      if (c.walk.empty() && c.walk_arcs.empty()) {
        report = to_bead(s);
      } else {
        if (c.lst_edge.empty()) throw UsageError("to-bead with an explicit walk needs --lst-edge");
        report = to_bead(s, walk_option(c, g), edge_named(g, c.lst_edge));
      }
    } else if (c.op == "relocate") {
      if (c.bridge.empty() || c.from.empty() || c.attach_to.empty())
        throw UsageError("relocate needs --bridge, --from and --to");
      const EdgeId e = edge_named(g, c.bridge);
      const VertexId from = vertex_named(g, c.from);
      if (g.edge(e).u != from && g.edge(e).v != from) throw UsageError(c.from + " is not an endpoint of " + c.bridge);
      report = relocate_report(s, g.edge(e).u == from ? 2 * e : 2 * e + 1, vertex_named(g, c.attach_to));
    } else if (c.op == "reduce-degrees") {
      report = reduce_degrees(s);
    } else {
      throw UsageError("unknown --op " + c.op);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string doc = surgery_to_json(report).dump(2) + "\n";
  if (!c.output.empty()) write_text(c.output, graph_to_json(report.output).dump(2) + "\n");
  if (!c.report.empty())
    write_text(c.report, doc);
  else
    out << doc;
  return report.held ? kExitOk : kExitViolation;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.jobs < 1) throw UsageError("--jobs must be at least 1");
    if (!c.format.empty() && c.format != "json" && c.format != "csv" && c.format != "dot")
      throw UsageError("--format must be json, csv or dot");
    if (c.command == "simulate") return cmd_simulate(c, out);
    if (c.command == "classes") return cmd_classes(c, out);
    if (c.command == "enumerate") return cmd_enumerate(c, out);
    if (c.command == "search") return cmd_search(c, out);
    if (c.command == "verify-theorem") return cmd_verify_theorem(c, out, err);
    if (c.command == "verify-corollary") return cmd_verify_corollary(c, out);
    if (c.command == "conjecture-scan") return cmd_conjecture(c, out);
    if (c.command == "compare") return cmd_compare(c, out);
    if (c.command == "render") return cmd_render(c, out);
    if (c.command == "transform") return cmd_transform(c, out);
    throw UsageError("unknown command " + c.command);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const InvalidGraph& e) {
    err << e.what() << "\n";
  } catch (const EnumerationCapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
  } catch (const SimulationLimitExceeded& e) {
    err << "tick cap exceeded: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "cap exceeded: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const OracleMismatch& e) {
    err << "internal error, oracle and simulator disagree: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamical systems of points on metric graphs"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  RunConfig c;

  auto input = [&](CLI::App* sub) {
    auto* g = sub->add_option("--graph,--edges-file", c.graph_path, "graph JSON file");
    auto* e = sub->add_option("--edges", c.edges, "inline edge lengths, e.g. 1,1,2");
    g->excludes(e);
    sub->add_flag("--allow-loops", c.allow_loops, "permit self-loops");
  };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", c.output, "write the result here"); };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json, csv or dot")->check(CLI::IsMember({"json", "csv", "dot"}));
  };
  auto search_flags = [&](CLI::App* sub) {
    sub->add_flag("--disconnected", c.disconnected, "include disconnected graphs");
    sub->add_flag("--multi-point", c.multi_point, "also scan every set of initial vertices");
    sub->add_option("--jobs,-j", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-edges", c.max_edges, "enumeration cap");
    sub->add_option("--report", c.report, "write the JSON report here");
  };

  auto* simulate_cmd = app.add_subcommand("simulate", "timeline of one system");
  input(simulate_cmd);
  output(simulate_cmd);
  format(simulate_cmd);
  simulate_cmd->add_option("--max-ticks", c.max_ticks, "tick cap");

  auto* classes_cmd = app.add_subcommand("classes", "point-places and their saturation times");
  input(classes_cmd);
  output(classes_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "graphs built from an edge multiset");
  input(enumerate_cmd);
  output(enumerate_cmd);
  enumerate_cmd->add_flag("--disconnected", c.disconnected, "include disconnected graphs");
  enumerate_cmd->add_flag("--count-only", c.count_only, "print the number of classes");
  enumerate_cmd->add_option("--max-edges", c.max_edges, "enumeration cap");

  auto* search_cmd = app.add_subcommand("search", "longest stabilization time over all graphs");
  input(search_cmd);
  output(search_cmd);
  search_flags(search_cmd);

  auto* theorem_cmd = app.add_subcommand("verify-theorem", "check for a bead witness with a terminal point");
  input(theorem_cmd);
  output(theorem_cmd);
  search_flags(theorem_cmd);
  theorem_cmd->add_option("--alphabet", c.alphabet, "check every multiset over these lengths");
  theorem_cmd->add_option("--max-m", c.max_m, "largest multiset size for --alphabet");

  auto* corollary_cmd = app.add_subcommand("verify-corollary", "find a path growing no faster");
  input(corollary_cmd);
  output(corollary_cmd);

  auto* conjecture_cmd = app.add_subcommand("conjecture-scan", "longest time versus best path");
  input(conjecture_cmd);
  output(conjecture_cmd);
  search_flags(conjecture_cmd);
  conjecture_cmd->add_option("--family", c.family, "additional edge multisets")->take_all();
  conjecture_cmd->add_option("--alphabet", c.alphabet, "every multiset over these lengths");
  conjecture_cmd->add_option("--max-m", c.max_m, "largest multiset size for --alphabet");

  auto* compare_cmd = app.add_subcommand("compare", "is N(t) of the first system <= the second");
  input(compare_cmd);
  output(compare_cmd);
  compare_cmd->add_option("--other", c.other_path, "second graph JSON")->required();
  compare_cmd->add_option("--max-ticks", c.max_ticks, "tick cap");

  auto* render_cmd = app.add_subcommand("render", "Graphviz DOT");
  input(render_cmd);
  output(render_cmd);
  render_cmd->add_option("--highlight", c.highlight, "edge ids to emphasize");

  auto* transform_cmd = app.add_subcommand("transform", "graph surgery with checked postconditions");
  input(transform_cmd);
  output(transform_cmd);
  transform_cmd->add_option("--op", c.op, "operation")
      ->required()
      ->check(CLI::IsMember({"cut-cycle", "greedy-walk", "to-bead", "relocate", "reduce-degrees"}));
  transform_cmd->add_option("--report", c.report, "write the JSON report here");
  transform_cmd->add_option("--cycle", c.cycle, "cycle vertices, e.g. v1,v4,v5,v6");
  transform_cmd->add_option("--split-at", c.split_at, "vertex the cut edge detaches from");
  transform_cmd->add_option("--split-edge", c.split_edge, "edge to detach");
  transform_cmd->add_option("--walk", c.walk, "walk as vertices");
  transform_cmd->add_option("--walk-arcs", c.walk_arcs, "walk as arcs, ~e for reverse");
  transform_cmd->add_option("--lst-edge", c.lst_edge, "edge the walk stabilizes");
  transform_cmd->add_option("--bridge", c.bridge, "bridge edge id");
  transform_cmd->add_option("--from", c.from, "endpoint the subgraph hangs from");
  transform_cmd->add_option("--to", c.attach_to, "new attachment vertex");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace dpgraph
