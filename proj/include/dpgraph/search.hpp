#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpgraph/enumeration.hpp"
#include "dpgraph/graph.hpp"
#include "dpgraph/simulator.hpp"

namespace dpgraph {

struct SearchOptions {
  EnumerationOptions enumeration{false, true, 6};
  /// Also scan every nonempty set of initial vertices (m <= 3 only).
  bool multi_point = false;
  int jobs = 1;
};

/// Raised when the walk-class oracle and the simulator disagree.
class OracleMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Witness {
  DPSystem system;
  Length t_s = 0;
  std::int64_t n_stable = 0;
  bool is_bead = false;
  int max_degree = 0;
  bool point_at_terminal = false;
  bool is_linear = false;
  bool is_tree = false;
  std::string canonical;
};

struct GraphStats {
  std::string canonical;
  Length best_ts = 0;
  int sources = 0;
};

struct SearchResult {
  EdgeMultiset edges;
  /// Longest stabilization time, internal units; max_ts() in user units.
  Length max_ts_scaled = 0;
  std::vector<Witness> witnesses;
  std::vector<GraphStats> per_graph;
  std::int64_t graphs = 0;
  std::int64_t partitions = 0;
  std::int64_t systems = 0;
  /// Best over all initial vertex sets when the multi-point scan ran.
  std::optional<Length> multi_point_max;
  /// Longest time over acyclic graphs, single point.
  Length tree_max_ts = 0;

  Rational max_ts() const { return edges.factor * Rational(max_ts_scaled); }
};

SearchResult lstdp_search(const EdgeMultiset& edges, const SearchOptions& options = {});

/// Structural flags of one system with its simulated timeline.
Witness describe(const DPSystem& system, const Timeline& timeline);

struct TheoremReport {
  SearchResult search;
  bool verdict = false;
  std::optional<Witness> witness;
};

/// Does some witness sit on a bead graph of max degree <= 3 with its single
/// point on a degree-1 vertex?
TheoremReport verify_theorem(const EdgeMultiset& edges, const SearchOptions& options = {});
TheoremReport theorem_from(SearchResult search);

struct CorollaryReport {
  DPSystem input;
  Timeline input_timeline;
  bool found = false;
  std::optional<DPSystem> linear;
  std::optional<Timeline> linear_timeline;
  /// "terminal" or "internal".
  std::string placement;
  int candidates = 0;
};

/// Paths over every ordering of the input's edge lengths (up to reversal),
/// each with one point at every vertex; first one growing no faster wins.
CorollaryReport verify_corollary(const DPSystem& system);

/// Path graph with the given lengths in order and vertices v0..vm.
MetricGraph path_graph(const std::vector<Length>& lengths, const Rational& scale = Rational(1));

struct ConjectureRow {
  EdgeMultiset edges;
  Length max_ts = 0;
  Length linear_ts = 0;
  /// max_ts / linear_ts; 0/0 counts as 1; nullopt when only the divisor is 0.
  std::optional<Rational> ratio;
  bool flagged = false;
};

/// Best linear stabilization time: max over orderings and placements.
Length best_linear_ts(const EdgeMultiset& edges);

std::vector<ConjectureRow> conjecture_scan(const std::vector<EdgeMultiset>& family, const SearchOptions& options = {});

/// Every multiset of size 1..max_m over the given lengths, in size-then-lex order.
std::vector<EdgeMultiset> multisets_over(const std::vector<Length>& alphabet, int max_m);

}  // namespace dpgraph
