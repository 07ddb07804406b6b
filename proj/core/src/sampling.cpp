#include "nepoll/sampling.hpp"

#include <bit>

namespace nepoll {

std::size_t default_walk_length(std::size_t node_count) {
  if (node_count <= 1) return 0;
  // ceil(log2 n) == bit width of n - 1
  return 10 * static_cast<std::size_t>(std::bit_width(node_count - 1));
}

NodeId sample_random_node(const Graph& g, RandomStream& rs) {
  return static_cast<NodeId>(rs.uniform_index(g.node_count()));
}

NodeId sample_random_friend(const Graph& g, RandomStream& rs) {
  const Edge& e = g.edges()[rs.uniform_index(g.edge_count())];
  return rs.coin() ? e.u : e.v;
}

NodeId sample_friend_of_random_node(const Graph& g, RandomStream& rs) {
  const auto nbrs = g.neighbors(sample_random_node(g, rs));
  return nbrs[rs.uniform_index(nbrs.size())];
}

NodeId random_walk_endpoint(const Graph& g, NodeId start, const WalkConfig& cfg, RandomStream& rs) {
  NodeId v = start;
  for (std::size_t step = 0; step < cfg.length; ++step) {
    if (cfg.lazy && rs.coin()) continue;
    const auto nbrs = g.neighbors(v);
    v = nbrs[rs.uniform_index(nbrs.size())];
  }
  return v;
}

std::vector<NodeId> random_walk_endpoints(const Graph& g, const WalkConfig& cfg, RandomStream& rs) {
  std::vector<NodeId> out;
  out.reserve(cfg.walker_count);
  for (std::size_t i = 0; i < cfg.walker_count; ++i) {
    const NodeId start = sample_random_node(g, rs);
    out.push_back(random_walk_endpoint(g, start, cfg, rs));
  }
  return out;
}

}  // namespace nepoll
