#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nepoll/graph.hpp"
#include "nepoll/random.hpp"

namespace nepoll::testing {

Graph make_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs);
Graph star(std::size_t leaves);  // center is node 0
Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph complete(std::size_t n);
/// K_{1,3} plus the chord 1-2.
Graph star_with_chord();

LabeledGraph labeled(Graph g, std::vector<std::uint8_t> labels);

/// Random connected simple graph with at most max_nodes nodes, drawn from
/// G(n,p) components, configuration models, stars, cycles and paths.
Graph random_small_graph(RandomStream& rs, std::size_t max_nodes);
std::vector<std::uint8_t> random_labels(RandomStream& rs, std::size_t n, double p);

struct LawMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Dense-matrix reference: builds A, the node laws of X, Y and Z as
/// probability vectors, and the moments of f(X), q(X), q(Y), q(Z).
struct DenseOracle {
  explicit DenseOracle(const LabeledGraph& lg);

  std::size_t n = 0;
  std::vector<std::vector<double>> adjacency;
  std::vector<double> degree;
  std::vector<double> q;
  std::vector<double> law_x, law_y, law_z;
  LawMoments label_x, response_x, response_y, response_z;
  double true_fraction = 0.0;
  double mean_degree_x = 0.0, mean_degree_y = 0.0, mean_degree_z = 0.0;
};

/// Sum of squared eigenvalues of D^{-1/2} A D^{-1/2}, i.e. its squared
/// Frobenius norm, summed over edges.
double normalized_frobenius_squared(const Graph& g);

}  // namespace nepoll::testing
