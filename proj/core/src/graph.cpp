#include "nepoll/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "nepoll/error.hpp"

namespace nepoll {

namespace {

std::string edge_text(std::uint64_t u, std::uint64_t v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// Component id per node (BFS order) and whether every component is 2-colorable.
struct Traversal {
  std::vector<std::uint32_t> component;
  std::uint32_t component_count = 0;
  bool bipartite = true;
};

Traversal traverse(const Graph& g) {
  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.node_count();
  Traversal t;
  t.component.assign(n, unseen);
  std::vector<std::uint8_t> color(n, 0);
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    if (t.component[s] != unseen) continue;
    const std::uint32_t id = t.component_count++;
    t.component[s] = id;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (NodeId u : g.neighbors(v)) {
        if (t.component[u] == unseen) {
          t.component[u] = id;
          color[u] = color[v] ^ 1U;
          frontier.push(u);
        } else if (color[u] == color[v]) {
          t.bipartite = false;
        }
      }
    }
  }
  return t;
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::vector<std::uint64_t> original_ids) {
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "graph needs at least one edge");
  if (node_count > std::numeric_limits<NodeId>::max())
    throw Error(ErrorCode::InvalidArgument, "node count exceeds 32-bit id space");
  if (!original_ids.empty() && original_ids.size() != node_count)
    throw Error(ErrorCode::InvalidArgument, "original id table size differs from node count");

  Graph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count)
      throw Error(ErrorCode::InvalidArgument, "edge " + edge_text(e.u, e.v) + " out of range");
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.u));
    g.edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end())
    throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + edge_text(dup->u, dup->v));

  g.degree_.assign(node_count, 0);
  for (const Edge& e : g.edges_) {
    ++g.degree_[e.u];
    ++g.degree_[e.v];
  }
  for (NodeId v = 0; v < node_count; ++v) {
    if (g.degree_[v] == 0)
      throw Error(ErrorCode::IsolatedNode, "node " + std::to_string(v) + " has degree 0");
  }

  g.offsets_.assign(node_count + 1, 0);
  for (NodeId v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + g.degree_[v];
  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  for (NodeId v = 0; v < node_count; ++v)
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));

  const auto [lo, hi] = std::minmax_element(g.degree_.begin(), g.degree_.end());
  g.min_degree_ = *lo;
  g.max_degree_ = *hi;

  if (original_ids.empty()) {
    original_ids.resize(node_count);
    std::iota(original_ids.begin(), original_ids.end(), std::uint64_t{0});
  }
  g.original_ids_ = std::move(original_ids);
  g.flags_ = graph_flags(g);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count() || v >= node_count()) return false;
  const auto nbrs = neighbors(degree_[u] <= degree_[v] ? u : v);
  return std::binary_search(nbrs.begin(), nbrs.end(), degree_[u] <= degree_[v] ? v : u);
}

Graph build_graph(std::span<const InputEdge> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyGraph, "graph needs at least one edge");
  std::vector<std::uint64_t> ids;
  ids.reserve(2 * pairs.size());
  for (const InputEdge& p : pairs) {
    if (p.u == p.v) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(p.u));
    ids.push_back(p.u);
    ids.push_back(p.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto compact = [&ids](std::uint64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const InputEdge& p : pairs) {
    edges.push_back({compact(p.u), compact(p.v)});
  }
  try {
    return Graph::from_edges(ids.size(), edges, ids);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DuplicateEdge) throw;
    // Report the duplicate in caller ids rather than compacted ones.
    std::sort(edges.begin(), edges.end(), [](Edge a, Edge b) {
      return std::minmax(a.u, a.v) < std::minmax(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (std::minmax(edges[i].u, edges[i].v) == std::minmax(edges[i - 1].u, edges[i - 1].v)) {
        const auto [a, b] = std::minmax(edges[i].u, edges[i].v);
        throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + edge_text(ids[a], ids[b]));
      }
    }
    throw;
  }
}

GraphFlags graph_flags(const Graph& g) {
  const Traversal t = traverse(g);
  return {t.component_count == 1, t.bipartite};
}

Graph largest_connected_component(const Graph& g) {
  if (g.flags().connected) return g;
  const Traversal t = traverse(g);
  std::vector<std::size_t> sizes(t.component_count, 0);
  for (auto c : t.component) ++sizes[c];
  // Components are numbered in order of their smallest node, so max_element
  // picks the lowest-numbered one among ties.
  const auto keep = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<NodeId> remap(g.node_count(), std::numeric_limits<NodeId>::max());
  std::vector<std::uint64_t> ids;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (t.component[v] == keep) {
      remap[v] = static_cast<NodeId>(ids.size());
      ids.push_back(g.original_id(v));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (t.component[e.u] == keep) edges.push_back({remap[e.u], remap[e.v]});
  }
  const std::size_t kept = ids.size();
  return Graph::from_edges(kept, edges, std::move(ids));
}

LabeledGraph::LabeledGraph(std::shared_ptr<const Graph> graph, std::vector<std::uint8_t> labels)
    : graph_(std::move(graph)), labels_(std::move(labels)) {
  if (!graph_) throw Error(ErrorCode::InvalidArgument, "labeled graph needs a graph");
  const Graph& g = *graph_;
  if (labels_.size() != g.node_count())
    throw Error(ErrorCode::InvalidArgument,
                "label vector has " + std::to_string(labels_.size()) + " entries for " +
                    std::to_string(g.node_count()) + " nodes");
  for (auto f : labels_) {
    if (f > 1) throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1");
    positive_count_ += f;
  }
  positive_neighbors_.assign(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    positive_neighbors_[e.u] += labels_[e.v];
    positive_neighbors_[e.v] += labels_[e.u];
  }
}

LabeledGraph::LabeledGraph(Graph graph, std::vector<std::uint8_t> labels)
    : LabeledGraph(std::make_shared<const Graph>(std::move(graph)), std::move(labels)) {}

double true_fraction(const LabeledGraph& lg) noexcept {
  return static_cast<double>(lg.positive_count()) /
         static_cast<double>(lg.graph().node_count());
}

}  // namespace nepoll
