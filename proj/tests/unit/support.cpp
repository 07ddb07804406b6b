#include "support.hpp"

#include <algorithm>

namespace nepoll::testing {

Graph make_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({std::min(a, b), std::max(a, b)});
  return Graph::from_edges(n, edges);
}

Graph star(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 1; v <= leaves; ++v) pairs.emplace_back(0, v);
  return make_graph(leaves + 1, pairs);
}

Graph cycle(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 0; v < n; ++v) pairs.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  return make_graph(n, pairs);
}

Graph path(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
  return make_graph(n, pairs);
}

Graph complete(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return make_graph(n, pairs);
}

Graph star_with_chord() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}); }

LabeledGraph labeled(Graph g, std::vector<std::uint8_t> labels) {
  return LabeledGraph(std::make_shared<const Graph>(std::move(g)), std::move(labels));
}

namespace {

// Random stub matching with self-loops and repeats dropped.
std::vector<InputEdge> stub_matching(RandomStream& rs, std::size_t n) {
  std::vector<std::uint64_t> stubs;
  for (std::uint64_t v = 0; v < n; ++v) {
    const std::size_t d = 1 + rs.uniform_index(std::max<std::size_t>(1, n / 3));
    stubs.insert(stubs.end(), d, v);
  }
  if (stubs.size() % 2 == 1) stubs.push_back(rs.uniform_index(n));
  rs.shuffle(std::span<std::uint64_t>(stubs));
  std::vector<InputEdge> out;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    auto a = std::min(stubs[i], stubs[i + 1]), b = std::max(stubs[i], stubs[i + 1]);
    if (a == b) continue;
    if (std::none_of(out.begin(), out.end(), [&](const InputEdge& e) { return e.u == a && e.v == b; }))
      out.push_back({a, b});
  }
  return out;
}

}  // namespace

Graph random_small_graph(RandomStream& rs, std::size_t max_nodes) {
  const std::size_t n = 3 + rs.uniform_index(max_nodes - 2);
  std::vector<InputEdge> pairs;
  switch (rs.uniform_index(5)) {
    case 0:
    case 1: {
      const double p = rs.coin() ? 0.2 : 0.5;
      for (std::uint64_t u = 0; u < n; ++u)
        for (std::uint64_t v = u + 1; v < n; ++v)
          if (rs.bernoulli(p)) pairs.push_back({u, v});
      break;
    }
    case 2: pairs = stub_matching(rs, n); break;
    case 3: {
      for (std::uint64_t v = 1; v < n; ++v) pairs.push_back({0, v});
      break;
    }
    default: {
      const bool closed = rs.coin();
      for (std::uint64_t v = 0; v + 1 < n; ++v) pairs.push_back({v, v + 1});
      if (closed) pairs.push_back({0, n - 1});
      break;
    }
  }
  if (pairs.empty()) pairs.push_back({0, 1});
  return largest_connected_component(build_graph(pairs));
}

std::vector<std::uint8_t> random_labels(RandomStream& rs, std::size_t n, double p) {
  std::vector<std::uint8_t> f(n);
  for (auto& x : f) x = rs.bernoulli(p) ? 1 : 0;
  return f;
}

namespace {

LawMoments moments(const std::vector<double>& law, const std::vector<double>& values) {
  LawMoments m;
  for (std::size_t i = 0; i < law.size(); ++i) m.mean += law[i] * values[i];
  for (std::size_t i = 0; i < law.size(); ++i) m.variance += law[i] * (values[i] - m.mean) * (values[i] - m.mean);
  return m;
}

}  // namespace

DenseOracle::DenseOracle(const LabeledGraph& lg) : n(lg.graph().node_count()) {
  const Graph& g = lg.graph();
  adjacency.assign(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) adjacency[e.u][e.v] = adjacency[e.v][e.u] = 1.0;

  degree.assign(n, 0.0);
  double m = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) degree[v] += adjacency[v][u];
    m += degree[v];
  }
  std::vector<double> f(n);
  for (std::size_t v = 0; v < n; ++v) f[v] = lg.label(static_cast<NodeId>(v));

  q.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) q[v] += adjacency[v][u] * f[u];
    q[v] /= degree[v];
  }

  law_x.assign(n, 1.0 / static_cast<double>(n));
  law_y.resize(n);
  law_z.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    law_y[v] = degree[v] / m;
    // P(Z = v) = sum over x of P(X = x) A[x][v] / d(x)
    for (std::size_t x = 0; x < n; ++x) law_z[v] += law_x[x] * adjacency[x][v] / degree[x];
  }

  label_x = moments(law_x, f);
  response_x = moments(law_x, q);
  response_y = moments(law_y, q);
  response_z = moments(law_z, q);
  true_fraction = label_x.mean;
  mean_degree_x = moments(law_x, degree).mean;
  mean_degree_y = moments(law_y, degree).mean;
  mean_degree_z = moments(law_z, degree).mean;
}

double normalized_frobenius_squared(const Graph& g) {
  double s = 0.0;
  for (const Edge& e : g.edges())
    s += 2.0 / (static_cast<double>(g.degree(e.u)) * static_cast<double>(g.degree(e.v)));
  return s;
}

}  // namespace nepoll::testing
