#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace nepoll {

using NodeId = std::uint32_t;

/// Canonical undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge as read from a file or produced by a caller: arbitrary non-negative ids.
struct InputEdge {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
};

struct GraphFlags {
  bool connected = false;
  bool bipartite = false;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Nodes are 0..n-1, every node has degree >= 1, neighbor lists are sorted and
/// symmetric. Each internal node remembers the id it had in the input so that
/// files written back out use the caller's numbering.
class Graph {
public:
  /// Strict constructor over already-compacted ids. Throws SelfLoop,
  /// DuplicateEdge (either orientation), IsolatedNode, EmptyGraph or
  /// InvalidArgument for out-of-range ids. `original_ids` defaults to identity.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::vector<std::uint64_t> original_ids = {});

  std::size_t node_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// M = 2|E|, the number of edge ends.
  std::size_t edge_end_count() const noexcept { return 2 * edges_.size(); }

  std::size_t degree(NodeId v) const noexcept { return degree_[v]; }
  std::span<const std::uint32_t> degrees() const noexcept { return degree_; }
  std::size_t min_degree() const noexcept { return min_degree_; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  /// Sorted canonical edge list; index i is the i-th edge for uniform edge draws.
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_edge(NodeId u, NodeId v) const noexcept;

  std::uint64_t original_id(NodeId v) const noexcept { return original_ids_[v]; }
  std::span<const std::uint64_t> original_ids() const noexcept { return original_ids_; }

  /// Connectivity and bipartiteness, computed once at construction.
  const GraphFlags& flags() const noexcept { return flags_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_ && a.original_ids_ == b.original_ids_;
  }

private:
  Graph() = default;

  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> original_ids_;
  std::size_t min_degree_ = 0;
  std::size_t max_degree_ = 0;
  GraphFlags flags_;
};

/// Builds a graph from arbitrary non-negative ids. Ids are compacted to
/// 0..n-1 in ascending order of the input id, so any permutation of the same
/// pairs yields the same Graph. Rejects self-loops and duplicate edges.
Graph build_graph(std::span<const InputEdge> pairs);

/// Full traversal: connectivity from node 0, exact bipartiteness by 2-coloring
/// every component.
GraphFlags graph_flags(const Graph& g);

/// Induced subgraph on the largest connected component (ties broken by the
/// smallest node index). Original ids are carried through.
Graph largest_connected_component(const Graph& g);

/// A graph with one binary label per node. Holds the graph by shared pointer so
/// relabelings of one topology do not copy adjacency.
class LabeledGraph {
public:
  /// Throws InvalidArgument if labels.size() != n or any label is not 0/1.
  LabeledGraph(std::shared_ptr<const Graph> graph, std::vector<std::uint8_t> labels);
  LabeledGraph(Graph graph, std::vector<std::uint8_t> labels);

  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }

  std::span<const std::uint8_t> labels() const noexcept { return labels_; }
  std::uint8_t label(NodeId v) const noexcept { return labels_[v]; }
  std::size_t positive_count() const noexcept { return positive_count_; }

  /// Number of neighbors of v labeled 1.
  std::uint32_t positive_neighbors(NodeId v) const noexcept { return positive_neighbors_[v]; }

private:
  std::shared_ptr<const Graph> graph_;
  std::vector<std::uint8_t> labels_;
  std::vector<std::uint32_t> positive_neighbors_;
  std::size_t positive_count_ = 0;
};

/// Fraction of nodes labeled 1.
double true_fraction(const LabeledGraph& lg) noexcept;

/// NEP response q(v): fraction of v's neighbors labeled 1.
inline double nep_response(const LabeledGraph& lg, NodeId v) noexcept {
  return static_cast<double>(lg.positive_neighbors(v)) /
         static_cast<double>(lg.graph().degree(v));
}

}  // namespace nepoll
