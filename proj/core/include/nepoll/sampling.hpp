#pragma once

#include <cstddef>
#include <vector>

#include "nepoll/graph.hpp"
#include "nepoll/random.hpp"

namespace nepoll {

struct WalkConfig {
  std::size_t length = 0;        // N, number of steps
  std::size_t walker_count = 1;  // b
  bool lazy = false;             // stay in place with probability 1/2 at each step
};

/// 10 * ceil(log2 n); the default N for random-walk polling.
std::size_t default_walk_length(std::size_t node_count);

/// X: uniform over nodes.
NodeId sample_random_node(const Graph& g, RandomStream& rs);

/// Y: uniform edge from the edge list, then a fair coin between its ends.
/// P(Y = v) = d(v) / M.
NodeId sample_random_friend(const Graph& g, RandomStream& rs);

/// Z: uniform neighbor of a uniform node.
NodeId sample_friend_of_random_node(const Graph& g, RandomStream& rs);

/// Endpoint of a `cfg.length`-step simple random walk from `start`.
/// cfg.walker_count is ignored here.
NodeId random_walk_endpoint(const Graph& g, NodeId start, const WalkConfig& cfg, RandomStream& rs);

/// cfg.walker_count independent walks, each from a uniformly sampled start.
std::vector<NodeId> random_walk_endpoints(const Graph& g, const WalkConfig& cfg, RandomStream& rs);

}  // namespace nepoll
