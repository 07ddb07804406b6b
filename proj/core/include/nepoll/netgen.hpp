#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "nepoll/graph.hpp"
#include "nepoll/random.hpp"

namespace nepoll {

struct ConfigModelSpec {
  std::size_t node_count = 0;
  double exponent = 2.4;                  // alpha in p(k) ~ k^-alpha
  std::size_t min_degree = 1;             // k_min >= 1
  std::optional<std::size_t> max_degree;  // k_max, defaults to default_max_degree
  std::uint64_t seed = 0;
};

/// Structural cutoff floor(sqrt(n)), raised to k_min and capped at n - 1.
std::size_t default_max_degree(std::size_t node_count, std::size_t min_degree);

struct ErdosRenyiSpec {
  std::size_t node_count = 0;
  double edge_probability = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 16;
};

struct GeneratedGraph {
  Graph graph;
  std::size_t erased_stubs = 0;      // half-edges lost to self-loops and multi-edges
  std::size_t dropped_isolated = 0;  // nodes left with degree 0 after erasure
};

/// Erased configuration model with iid truncated power-law degrees.
///
/// An odd degree sum is repaired by incrementing one uniformly chosen node.
/// Half-edges are matched by a uniform shuffle; self-loops and repeated pairs
/// are then erased. Nodes left without edges are dropped; surviving nodes keep
/// their generator index as original id. Throws DegenerateSpec for invalid
/// parameters.
GeneratedGraph configuration_model(const ConfigModelSpec& spec);

/// Power-law degree draws alone (before odd-sum repair).
std::vector<std::size_t> power_law_degrees(const ConfigModelSpec& spec, RandomStream& rs);

/// G(n, p). Resamples with a fresh substream when a node ends up isolated;
/// throws IsolatedNodeAfterRetries after spec.max_attempts tries.
Graph erdos_renyi(const ErdosRenyiSpec& spec);

struct RewireTarget {
  double target = 0.0;  // desired assortativity
  double tolerance = 0.02;
  std::size_t max_iterations = 5'000'000;  // proposals
};

struct RewireResult {
  Graph graph;
  double achieved = 0.0;
  std::size_t proposals = 0;
  std::size_t accepted = 0;
  bool reached = false;  // false: iteration budget ran out, graph is best effort
};

/// Degree-preserving double-edge swaps, each accepted only if it moves the
/// assortativity closer to the target and keeps the graph simple.
/// Throws AssortativityUndefined on regular graphs and InvalidArgument for
/// fewer than two edges.
RewireResult rewire_to_assortativity(const Graph& g, const RewireTarget& target, RandomStream& rs);

struct LabelTarget {
  double probability = 0.5;  // iid Bernoulli parameter for the initial draw
  double target = 0.0;       // desired degree-label correlation
  double tolerance = 0.02;
  std::size_t max_iterations = 5'000'000;  // swap proposals
};

struct LabelResult {
  LabeledGraph labeled;
  double achieved = 0.0;
  std::size_t proposals = 0;
  std::size_t swaps = 0;
  bool reached = false;
};

/// iid Bernoulli labels followed by label swaps between a random 0-node and a
/// random 1-node, accepted only when they move the degree-label correlation
/// toward the target. The number of 1-labels never changes. Throws
/// DegreeLabelCorrUndefined when the correlation is undefined (regular graph
/// or a constant initial draw).
LabelResult assign_labels(std::shared_ptr<const Graph> g, const LabelTarget& target, RandomStream& rs);
LabelResult assign_labels(const Graph& g, const LabelTarget& target, RandomStream& rs);

/// iid Bernoulli(p) labels with no correlation adjustment.
std::vector<std::uint8_t> bernoulli_labels(std::size_t n, double p, RandomStream& rs);

}  // namespace nepoll
