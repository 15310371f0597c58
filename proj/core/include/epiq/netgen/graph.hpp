#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace epiq::netgen {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Node ids are 0..n-1. Neighbor lists are sorted ascending, contain no
/// self-loops and no duplicates, and are symmetric. A built Graph is never
/// mutated, so it can be shared read-only across threads.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list. Self-loops and duplicate edges
  /// are discarded; their counts are available from the overload below.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  struct BuildReport {
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
  };
  static Graph from_edges(std::size_t n, std::span<const Edge> edges, BuildReport& report);

  /// Builds from per-node neighbor lists that may be unsorted but must
  /// already be simple and symmetric (what the generators produce).
  static Graph from_adjacency(std::vector<std::vector<NodeId>> adjacency);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }
  bool empty() const noexcept { return num_nodes() == 0; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  double average_degree() const noexcept {
    return empty() ? 0.0 : 2.0 * static_cast<double>(num_edges()) / static_cast<double>(num_nodes());
  }

  std::vector<std::size_t> degrees() const;

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Checks every structural invariant; throws ParameterError on violation.
  void validate() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Growable adjacency used while generating. Rejects self-loops and
/// duplicate edges.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n = 0) : adjacency_(n) {}

  NodeId add_node() {
    adjacency_.emplace_back();
    return static_cast<NodeId>(adjacency_.size() - 1);
  }

  /// Returns false (and changes nothing) for self-loops and existing edges.
  bool add_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;
  void remove_edge(NodeId u, NodeId v);

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t degree(NodeId v) const noexcept { return adjacency_[v].size(); }
  const std::vector<NodeId>& neighbors(NodeId v) const noexcept { return adjacency_[v]; }

  Graph build() &&;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
};

}  // namespace epiq::netgen
