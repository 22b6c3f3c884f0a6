#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dpgraph/graph.hpp"

namespace dpgraph {

struct EnumerationOptions {
  bool allow_loops = false;
  bool connected_only = true;
  int max_edges = 7;
};

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Calls `emit` once per isomorphism class of graphs whose edge lengths are
/// exactly `edges.scaled`, in a fixed order. Edge ids follow ascending length.
void enumerate_graphs(const EdgeMultiset& edges, const EnumerationOptions& options,
                      const std::function<void(const MetricGraph&)>& emit);
std::vector<MetricGraph> enumerate_graphs(const EdgeMultiset& edges, const EnumerationOptions& options = {});

/// Endpoint partitions the generator visits before connectivity and
/// isomorphism filtering. Bounds the number of emitted graphs from above.
std::int64_t count_partitions(const EdgeMultiset& edges, const EnumerationOptions& options = {});

/// Multiset over integer lengths with factor 1; handy for tests.
EdgeMultiset unit_multiset(std::vector<Length> lengths);

}  // namespace dpgraph
