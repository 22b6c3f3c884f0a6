#include "dpgraph/enumeration.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "dpgraph/canonical.hpp"

namespace dpgraph {

namespace {

/// Restricted-growth labelling of the 2m endpoint slots. Slot 2i and 2i+1 are
/// the ends of edge i; edges are sorted by length. Only the lexicographically
/// least labelling of each graph needs to be reachable, so each edge is
/// oriented low-to-high and equal-length runs have non-decreasing pairs.
class PartitionWalker {
 public:
  PartitionWalker(std::vector<Length> lengths, bool allow_loops)
      : lengths_(std::move(lengths)), allow_loops_(allow_loops), slot_(2 * lengths_.size(), 0) {}

  template <typename Visit>
  void run(Visit&& visit) {
    if (lengths_.empty()) return;
    slot_[0] = 0;
    grow(1, 1, visit);
  }

 private:
  template <typename Visit>
  void grow(std::size_t pos, int blocks, Visit& visit) {
    if (pos == slot_.size()) {
      visit(slot_, blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      if (pos % 2 == 1) {
        const int first = slot_[pos - 1];
        if (allow_loops_ ? b < first : b <= first) continue;
        const std::size_t e = pos / 2;
        if (e > 0 && lengths_[e] == lengths_[e - 1]) {
          const std::pair<int, int> prev{slot_[pos - 3], slot_[pos - 2]};
          if (std::pair<int, int>{first, b} < prev) continue;
        }
      }
      slot_[pos] = b;
      grow(pos + 1, b == blocks ? blocks + 1 : blocks, visit);
    }
  }

  std::vector<Length> lengths_;
  bool allow_loops_;
  std::vector<int> slot_;
};

bool connected(const std::vector<int>& slot, int blocks) {
  std::vector<int> parent(blocks);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = blocks;
  for (std::size_t i = 0; i < slot.size(); i += 2) {
    const int a = find(slot[i]), b = find(slot[i + 1]);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components == 1;
}

std::vector<Length> sorted_lengths(const EdgeMultiset& edges, const EnumerationOptions& options) {
  if (edges.scaled.empty()) throw std::invalid_argument("edge multiset is empty");
  if (static_cast<int>(edges.scaled.size()) > options.max_edges)
    throw EnumerationCapExceeded("enumeration is capped at " + std::to_string(options.max_edges) + " edges, got " +
                                 std::to_string(edges.scaled.size()));
  for (Length l : edges.scaled)
    if (l <= 0) throw std::invalid_argument("edge lengths must be positive");
  std::vector<Length> lengths = edges.scaled;
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace

void enumerate_graphs(const EdgeMultiset& edges, const EnumerationOptions& options,
                      const std::function<void(const MetricGraph&)>& emit) {
  const std::vector<Length> lengths = sorted_lengths(edges, options);
  std::unordered_set<std::string> seen;
  PartitionWalker walker(lengths, options.allow_loops);
  walker.run([&](const std::vector<int>& slot, int blocks) {
    if (options.connected_only && !connected(slot, blocks)) return;
    std::vector<Edge> list;
    for (std::size_t i = 0; i < lengths.size(); ++i)
      list.push_back(Edge{"e" + std::to_string(i + 1), slot[2 * i], slot[2 * i + 1], lengths[i]});
    std::vector<std::string> names;
    for (int b = 0; b < blocks; ++b) names.push_back("v" + std::to_string(b));
    MetricGraph g(std::move(names), std::move(list), GraphOptions{options.allow_loops, options.connected_only},
                  edges.factor);
    if (seen.insert(canonical_form(g)).second) emit(g);
  });
}

std::vector<MetricGraph> enumerate_graphs(const EdgeMultiset& edges, const EnumerationOptions& options) {
  std::vector<MetricGraph> out;
  enumerate_graphs(edges, options, [&](const MetricGraph& g) { out.push_back(g); });
  return out;
}

std::int64_t count_partitions(const EdgeMultiset& edges, const EnumerationOptions& options) {
  const std::vector<Length> lengths = sorted_lengths(edges, options);
  std::int64_t count = 0;
  PartitionWalker walker(lengths, options.allow_loops);
  walker.run([&](const std::vector<int>& slot, int blocks) {
    if (!options.connected_only || connected(slot, blocks)) ++count;
  });
  return count;
}

EdgeMultiset unit_multiset(std::vector<Length> lengths) {
  EdgeMultiset out;
  for (Length l : lengths) out.original.emplace_back(l);
  out.scaled = std::move(lengths);
  return out;
}

}  // namespace dpgraph
