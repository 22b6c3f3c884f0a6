#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpgraph/graph.hpp"

namespace dpgraph {

using Tick = std::int64_t;

/// Occupied offsets per arc; offset k on arc a means the point has travelled
/// k units from tail(a). Each arc holds length(a) cells.
struct SimState {
  std::vector<std::vector<std::uint8_t>> cells;

  static SimState empty(const MetricGraph& g);
  std::int64_t point_count() const;
  std::int64_t edge_count(EdgeId e) const;
  /// Packed bit string identifying the state, used for recurrence detection.
  std::string key() const;
  friend bool operator==(const SimState&, const SimState&) = default;
};

struct StepResult {
  SimState next;
  /// Number of points arriving at each vertex during this tick.
  std::vector<int> arrivals;
};

/// Advances every point by one unit, fuses arrivals and scatters one new
/// point onto every arc leaving a vertex with at least one arrival.
StepResult step(const SimState& state, const MetricGraph& g);

/// State right after the initial scatter at tick 0.
SimState initial_state(const DPSystem& system);

struct Timeline {
  /// N(t) on the open interval (t, t + 1), for t = 0 .. last_tick.
  std::vector<std::int64_t> total;
  /// per_edge[t][e], both arcs summed.
  std::vector<std::vector<std::int64_t>> per_edge;
  /// arrivals[t] lists (vertex, simultaneous arrivals) for every vertex hit at t.
  std::vector<std::vector<std::pair<VertexId, int>>> arrivals;
  std::vector<Tick> coll;
  Tick t_s = 0;
  Tick period = 0;
  /// First tick of the detected cycle; the state at first_repeat + period
  /// equals the state at first_repeat.
  Tick first_repeat = 0;
  std::int64_t n_stable = 0;
  bool complete = false;
  /// Scale back to user units.
  Rational scale{1};

  Tick last_tick() const { return static_cast<Tick>(total.size()) - 1; }
  /// N(t) for any t >= 0, extending past the record by the stable count.
  std::int64_t n_at(Tick t) const;
  std::int64_t edge_at(Tick t, EdgeId e) const;
  bool is_collision(Tick t) const;
};

struct SimOptions {
  /// 0 selects the default cap derived from the total length.
  Tick max_ticks = 0;
};

Tick default_max_ticks(const MetricGraph& g);

class SimulationLimitExceeded : public std::runtime_error {
 public:
  SimulationLimitExceeded(const std::string& what, Timeline partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Timeline& partial() const { return partial_; }

 private:
  Timeline partial_;
};

/// Runs the system until its full state recurs. Throws
/// SimulationLimitExceeded (carrying the partial timeline) if the cap is hit.
Timeline simulate(const DPSystem& system, SimOptions options = {});

struct GrowthComparison {
  bool dominated = true;
  std::vector<Tick> violations;
  Tick horizon = 0;
};

/// Checks N_a(t) <= N_b(t) for every tick.
GrowthComparison compare_growth(const Timeline& a, const Timeline& b);

}  // namespace dpgraph
