#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dpgraph {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitInternal = 3 };

struct RunConfig {
  std::string command;
  /// Exactly one of graph_path / edges is the input.
  std::string graph_path;
  std::string edges;
  std::string other_path;
  std::vector<std::string> family;
  std::string alphabet;
  int max_m = 0;

  bool allow_loops = false;
  bool disconnected = false;
  bool multi_point = false;
  bool count_only = false;
  int jobs = 1;
  std::int64_t max_ticks = 0;
  int max_edges = 0;
  std::string format;
  std::string output;
  std::string report;

  std::string op;
  std::string cycle;
  std::string split_at;
  std::string split_edge;
  std::string bridge;
  std::string from;
  std::string attach_to;
  std::string walk;
  std::string walk_arcs;
  std::string lst_edge;
  std::string highlight;
};

/// Dispatches one subcommand. Errors go to `err` with exit code 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dpgraph
