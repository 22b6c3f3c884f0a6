#include "dpgraph/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "dpgraph/canonical.hpp"
#include "dpgraph/structure.hpp"
#include "dpgraph/walk_classes.hpp"

namespace dpgraph {

namespace {

struct GraphOutcome {
  Length best = 0;
  std::vector<Witness> top;
  int sources = 0;
  std::int64_t systems = 0;
  std::optional<Length> multi_best;
  std::string canonical;
  bool tree = false;
};

std::string describe_points(const DPSystem& s) {
  std::string out;
  for (VertexId p : s.points) out += (out.empty() ? "" : ",") + s.graph.name(p);
  return out;
}

/// Simulates and insists on the oracle's answer.
Timeline confirm(const DPSystem& system, const OracleResult& oracle) {
  const Timeline tl = simulate(system);
  const std::string where = canonical_form(system.graph) + " from " + describe_points(system);
  if (tl.t_s != oracle.t_s)
    throw OracleMismatch("t_s mismatch on " + where + ": simulator " + std::to_string(tl.t_s) + ", oracle " +
                         std::to_string(oracle.t_s));
  for (EdgeId e = 0; e < system.graph.edge_count(); ++e)
    if (tl.per_edge.back()[e] != oracle.per_edge[e])
      throw OracleMismatch("stabilized count mismatch on edge " + system.graph.edge(e).id + " of " + where);
  return tl;
}

GraphOutcome evaluate(const MetricGraph& g, bool multi_point) {
  GraphOutcome out;
  out.canonical = canonical_form(g);
  out.tree = is_tree(g);
  const int n = g.vertex_count();
  std::vector<OracleResult> oracles;
  for (VertexId v = 0; v < n; ++v) {
    oracles.push_back(stabilization_oracle(g, {v}));
    out.best = std::max(out.best, oracles.back().t_s);
  }
  out.sources = n;
  out.systems = n;
  for (VertexId v = 0; v < n; ++v) {
    if (oracles[v].t_s != out.best) continue;
    DPSystem system(g, {v});
    const Timeline tl = confirm(system, oracles[v]);
    out.top.push_back(describe(system, tl));
  }
  if (multi_point) {
    Length best = 0;
    std::vector<VertexId> best_set;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<VertexId> set;
      for (VertexId v = 0; v < n; ++v)
        if (mask & (1u << v)) set.push_back(v);
      const OracleResult r = stabilization_oracle(g, set);
      ++out.systems;
      if (best_set.empty() || r.t_s > best) {
        best = r.t_s;
        best_set = set;
      }
    }
    confirm(DPSystem(g, best_set), stabilization_oracle(g, best_set));
    out.multi_best = best;
  }
  return out;
}

}  // namespace

Witness describe(const DPSystem& system, const Timeline& timeline) {
  Witness w;
  w.system = system;
  w.t_s = timeline.t_s;
  w.n_stable = timeline.n_stable;
  w.is_bead = is_bead(system.graph);
  w.max_degree = system.graph.max_degree();
  w.point_at_terminal = system.points.size() == 1 && system.graph.degree(system.points.front()) == 1;
  w.is_linear = is_linear(system.graph);
  w.is_tree = is_tree(system.graph);
  w.canonical = canonical_form(system);
  return w;
}

SearchResult lstdp_search(const EdgeMultiset& edges, const SearchOptions& options) {
  if (options.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (options.multi_point && edges.scaled.size() > 3)
    throw std::invalid_argument("the multi-point scan is limited to 3 edges");
  SearchResult result;
  result.edges = edges;
  result.partitions = count_partitions(edges, options.enumeration);
  const std::vector<MetricGraph> graphs = enumerate_graphs(edges, options.enumeration);
  result.graphs = static_cast<std::int64_t>(graphs.size());

  std::vector<GraphOutcome> outcomes(graphs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= graphs.size()) return;
      try {
        outcomes[i] = evaluate(graphs[i], options.multi_point);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next.store(graphs.size());
      }
    }
  };
  const int jobs = std::min<int>(options.jobs, std::max<int>(1, static_cast<int>(graphs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const GraphOutcome& o : outcomes) {
    result.max_ts_scaled = std::max(result.max_ts_scaled, o.best);
    if (o.tree) result.tree_max_ts = std::max(result.tree_max_ts, o.best);
    result.systems += o.systems;
    result.per_graph.push_back(GraphStats{o.canonical, o.best, o.sources});
    if (o.multi_best) result.multi_point_max = std::max(result.multi_point_max.value_or(0), *o.multi_best);
  }
  for (GraphOutcome& o : outcomes)
    if (o.best == result.max_ts_scaled)
      for (Witness& w : o.top) result.witnesses.push_back(std::move(w));
  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const Witness& a, const Witness& b) { return a.canonical < b.canonical; });
  std::sort(result.per_graph.begin(), result.per_graph.end(),
            [](const GraphStats& a, const GraphStats& b) { return a.canonical < b.canonical; });
  return result;
}

TheoremReport theorem_from(SearchResult search) {
  TheoremReport report;
  for (const Witness& w : search.witnesses)
    if (w.is_bead && w.max_degree <= 3 && w.point_at_terminal) {
      report.verdict = true;
      report.witness = w;
      break;
    }
  report.search = std::move(search);
  return report;
}

TheoremReport verify_theorem(const EdgeMultiset& edges, const SearchOptions& options) {
  return theorem_from(lstdp_search(edges, options));
}

MetricGraph path_graph(const std::vector<Length>& lengths, const Rational& scale) {
  std::vector<std::string> names;
  std::vector<Edge> list;
  for (std::size_t i = 0; i <= lengths.size(); ++i) names.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < lengths.size(); ++i)
    list.push_back(Edge{"e" + std::to_string(i + 1), static_cast<VertexId>(i), static_cast<VertexId>(i + 1), lengths[i]});
  return MetricGraph(std::move(names), std::move(list), GraphOptions{}, scale);
}

namespace {

/// Calls visit(order) for each ordering of `lengths` up to reversal.
template <typename Visit>
void for_each_arrangement(std::vector<Length> lengths, Visit&& visit) {
  std::sort(lengths.begin(), lengths.end());
  do {
    std::vector<Length> reversed(lengths.rbegin(), lengths.rend());
    if (reversed < lengths) continue;
    if (visit(lengths)) return;
  } while (std::next_permutation(lengths.begin(), lengths.end()));
}

}  // namespace

CorollaryReport verify_corollary(const DPSystem& system) {
  CorollaryReport report;
  report.input = system;
  report.input_timeline = simulate(system);
  const MetricGraph& g = system.graph;

  auto accept = [&](const DPSystem& candidate) {
    ++report.candidates;
    Timeline tl = simulate(candidate);
    if (!compare_growth(tl, report.input_timeline).dominated) return false;
    report.found = true;
    report.linear = candidate;
    report.linear_timeline = std::move(tl);
    report.placement = candidate.graph.degree(candidate.points.front()) <= 1 ? "terminal" : "internal";
    return true;
  };

  if (system.points.size() == 1 && is_linear(g) && accept(system)) return report;
  for_each_arrangement(g.edge_lengths(), [&](const std::vector<Length>& order) {
    const MetricGraph path = path_graph(order, g.scale());
    for (VertexId v = 0; v < path.vertex_count(); ++v)
      if (accept(DPSystem(path, {v}))) return true;
    return false;
  });
  return report;
}

Length best_linear_ts(const EdgeMultiset& edges) {
  Length best = 0;
  for_each_arrangement(edges.scaled, [&](const std::vector<Length>& order) {
    const MetricGraph path = path_graph(order);
    for (VertexId v = 0; v < path.vertex_count(); ++v) best = std::max(best, stabilization_oracle(path, {v}).t_s);
    return false;
  });
  return best;
}

std::vector<ConjectureRow> conjecture_scan(const std::vector<EdgeMultiset>& family, const SearchOptions& options) {
  std::vector<ConjectureRow> rows;
  for (const EdgeMultiset& edges : family) {
    ConjectureRow row;
    row.edges = edges;
    row.max_ts = lstdp_search(edges, options).max_ts_scaled;
    row.linear_ts = best_linear_ts(edges);
    if (row.linear_ts > 0)
      row.ratio = Rational(row.max_ts, row.linear_ts);
    else if (row.max_ts == 0)
      row.ratio = Rational(1);
    row.flagged = !row.ratio || Rational(2) < *row.ratio;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<EdgeMultiset> multisets_over(const std::vector<Length>& alphabet, int max_m) {
  std::vector<Length> letters = alphabet;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  std::vector<EdgeMultiset> out;
  for (int m = 1; m <= max_m; ++m) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      std::vector<Rational> lengths;
      for (std::size_t i : idx) lengths.emplace_back(letters[i]);
      out.push_back(scale_to_integer(lengths));
      int k = m - 1;
      while (k >= 0 && idx[k] + 1 == letters.size()) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < m; ++j) idx[j] = idx[k];
    }
  }
  return out;
}

}  // namespace dpgraph
