#include "nepoll/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "nepoll/analytics.hpp"
#include "nepoll/error.hpp"

namespace nepoll {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
  const auto [lo, hi] = std::minmax(a, b);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

Edge canonical(NodeId a, NodeId b) {
  const auto [lo, hi] = std::minmax(a, b);
  return {lo, hi};
}

// Drops degree-0 nodes; each survivor keeps its generator index as original id.
GeneratedGraph compact_generated(std::size_t n, std::vector<Edge> edges, std::size_t erased) {
  std::vector<std::uint8_t> used(n, 0);
  for (const Edge& e : edges) used[e.u] = used[e.v] = 1;
  std::vector<NodeId> remap(n, 0);
  std::vector<std::uint64_t> ids;
  for (NodeId v = 0; v < n; ++v) {
    if (used[v]) {
      remap[v] = static_cast<NodeId>(ids.size());
      ids.push_back(v);
    }
  }
  for (Edge& e : edges) e = {remap[e.u], remap[e.v]};
  const std::size_t dropped = n - ids.size();
  const std::size_t kept = ids.size();
  return {Graph::from_edges(kept, edges, std::move(ids)), erased, dropped};
}

}  // namespace

std::size_t default_max_degree(std::size_t node_count, std::size_t min_degree) {
  if (node_count < 2) return 0;
  const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(node_count)));
  return std::min(node_count - 1, std::max(root, min_degree));
}

std::vector<std::size_t> power_law_degrees(const ConfigModelSpec& spec, RandomStream& rs) {
  const std::size_t n = spec.node_count;
  if (n < 2) throw Error(ErrorCode::DegenerateSpec, "configuration model needs at least 2 nodes");
  const std::size_t k_max = spec.max_degree.value_or(default_max_degree(n, spec.min_degree));
  if (!(spec.exponent > 1.0)) throw Error(ErrorCode::DegenerateSpec, "power-law exponent must exceed 1");
  if (spec.min_degree < 1) throw Error(ErrorCode::DegenerateSpec, "k_min must be at least 1");
  if (k_max < spec.min_degree)
    throw Error(ErrorCode::DegenerateSpec, "k_max " + std::to_string(k_max) + " < k_min " +
                                               std::to_string(spec.min_degree));
  if (k_max > n - 1) throw Error(ErrorCode::DegenerateSpec, "k_max must not exceed n - 1");

  std::vector<double> cdf;
  cdf.reserve(k_max - spec.min_degree + 1);
  double total = 0.0;
  for (std::size_t k = spec.min_degree; k <= k_max; ++k) {
    total += std::pow(static_cast<double>(k), -spec.exponent);
    cdf.push_back(total);
  }
  std::vector<std::size_t> degrees(n);
  for (auto& d : degrees) {
    const double u = rs.uniform01() * total;
    const auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    d = spec.min_degree + std::min(idx, cdf.size() - 1);
  }
  return degrees;
}

GeneratedGraph configuration_model(const ConfigModelSpec& spec) {
  RandomStream rs(spec.seed);
  std::vector<std::size_t> degrees = power_law_degrees(spec, rs);
  const std::size_t n = degrees.size();

  std::size_t total = 0;
  for (auto d : degrees) total += d;
  if (total % 2 == 1) ++degrees[rs.uniform_index(n)];

  std::vector<NodeId> stubs;
  stubs.reserve(total + 1);
  for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), degrees[v], v);
  rs.shuffle(std::span<NodeId>(stubs));

  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  std::size_t erased = 0;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    if (stubs[i] == stubs[i + 1]) {
      erased += 2;
      continue;
    }
    edges.push_back(canonical(stubs[i], stubs[i + 1]));
  }
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  erased += 2 * static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  if (edges.empty()) throw Error(ErrorCode::DegenerateSpec, "configuration model produced no edges");
  return compact_generated(n, std::move(edges), erased);
}

Graph erdos_renyi(const ErdosRenyiSpec& spec) {
  const std::size_t n = spec.node_count;
  const double p = spec.edge_probability;
  if (n < 2) throw Error(ErrorCode::DegenerateSpec, "G(n,p) needs at least 2 nodes");
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::DegenerateSpec, "edge probability must lie in (0, 1]");

  const RandomStream root(spec.seed);
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(spec.max_attempts, 1); ++attempt) {
    RandomStream rs = root.substream(attempt);
    std::vector<Edge> edges;
    std::vector<std::uint8_t> touched(n, 0);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (p >= 1.0 || rs.bernoulli(p)) {
          edges.push_back({u, v});
          touched[u] = touched[v] = 1;
        }
      }
    }
    if (std::find(touched.begin(), touched.end(), 0) == touched.end()) return Graph::from_edges(n, edges);
  }
  throw Error(ErrorCode::IsolatedNodeAfterRetries,
              "G(n,p) left an isolated node in each of " + std::to_string(spec.max_attempts) + " attempts");
}

RewireResult rewire_to_assortativity(const Graph& g, const RewireTarget& target, RandomStream& rs) {
  if (g.edge_count() < 2) throw Error(ErrorCode::InvalidArgument, "rewiring needs at least two edges");
  if (!(target.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (g.min_degree() == g.max_degree())
    throw Error(ErrorCode::AssortativityUndefined, "assortativity undefined on a regular graph");

  const auto deg = g.degrees();
  const double m = static_cast<double>(g.edge_end_count());
  double d2 = 0.0, d3 = 0.0;
  for (auto d : deg) {
    d2 += static_cast<double>(d) * d;
    d3 += static_cast<double>(d) * d * d;
  }
  const double mean_q = d2 / m;
  const double var_q = d3 / m - mean_q * mean_q;

  // Only sum over edges of d(u) d(v) changes under degree-preserving swaps.
  std::int64_t products = 0;
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    products += static_cast<std::int64_t>(deg[e.u]) * deg[e.v];
    present.insert(edge_key(e.u, e.v));
  }
  auto r_of = [&](std::int64_t s) { return (2.0 * static_cast<double>(s) / m - mean_q * mean_q) / var_q; };

  RewireResult out{g, r_of(products), 0, 0, false};
  double r = out.achieved;
  if (std::abs(r - target.target) <= target.tolerance) {
    out.reached = true;
    return out;
  }

  const std::size_t edge_total = edges.size();
  while (out.proposals < target.max_iterations) {
    ++out.proposals;
    const std::size_t i = rs.uniform_index(edge_total);
    std::size_t j = rs.uniform_index(edge_total - 1);
    if (j >= i) ++j;
    NodeId v1 = edges[i].u, v2 = edges[i].v;
    NodeId u1 = edges[j].u, u2 = edges[j].v;
    if (rs.coin()) std::swap(v1, v2);
    if (rs.coin()) std::swap(u1, u2);
    if (v1 == u1 || v2 == u2) continue;
    if (present.contains(edge_key(v1, u1)) || present.contains(edge_key(v2, u2))) continue;

    const std::int64_t delta = static_cast<std::int64_t>(deg[v1]) * deg[u1] +
                               static_cast<std::int64_t>(deg[v2]) * deg[u2] -
                               static_cast<std::int64_t>(deg[v1]) * deg[v2] -
                               static_cast<std::int64_t>(deg[u1]) * deg[u2];
    const double r_new = r_of(products + delta);
    if (!(std::abs(r_new - target.target) < std::abs(r - target.target))) continue;

    present.erase(edge_key(v1, v2));
    present.erase(edge_key(u1, u2));
    present.insert(edge_key(v1, u1));
    present.insert(edge_key(v2, u2));
    edges[i] = canonical(v1, u1);
    edges[j] = canonical(v2, u2);
    products += delta;
    r = r_new;
    ++out.accepted;
    if (std::abs(r - target.target) <= target.tolerance) {
      out.reached = true;
      break;
    }
  }

  std::vector<std::uint64_t> ids(g.original_ids().begin(), g.original_ids().end());
  out.graph = Graph::from_edges(g.node_count(), edges, std::move(ids));
  out.achieved = assortativity(out.graph);
  out.reached = std::abs(out.achieved - target.target) <= target.tolerance;
  return out;
}

std::vector<std::uint8_t> bernoulli_labels(std::size_t n, double p, RandomStream& rs) {
  std::vector<std::uint8_t> labels(n);
  for (auto& f : labels) f = rs.bernoulli(p) ? 1 : 0;
  return labels;
}

LabelResult assign_labels(std::shared_ptr<const Graph> gp, const LabelTarget& target, RandomStream& rs) {
  if (!gp) throw Error(ErrorCode::InvalidArgument, "assign_labels needs a graph");
  if (!(target.probability > 0.0 && target.probability < 1.0))
    throw Error(ErrorCode::InvalidArgument, "label probability must lie in (0, 1)");
  if (!(target.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const Graph& g = *gp;
  const std::size_t n = g.node_count();
  const auto deg = g.degrees();

  std::vector<std::uint8_t> labels = bernoulli_labels(n, target.probability, rs);
  // Throws DegreeLabelCorrUndefined for regular graphs and constant labels.
  const double rho0 = degree_label_correlation(LabeledGraph(gp, labels));

  std::vector<NodeId> zeros, ones;
  std::int64_t sum_fd = 0;
  double sum_d = 0.0, sum_d2 = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    (labels[v] ? ones : zeros).push_back(v);
    if (labels[v]) sum_fd += deg[v];
    sum_d += deg[v];
    sum_d2 += static_cast<double>(deg[v]) * deg[v];
  }
  const double nn = static_cast<double>(n);
  const double fbar = static_cast<double>(ones.size()) / nn;
  const double mean_k = sum_d / nn;
  const double scale = std::sqrt((sum_d2 / nn - mean_k * mean_k) * fbar * (1.0 - fbar));
  auto rho_of = [&](std::int64_t s) { return (static_cast<double>(s) / nn - fbar * mean_k) / scale; };

  double rho = rho0;
  std::size_t proposals = 0, swaps = 0;
  bool reached = std::abs(rho - target.target) <= target.tolerance;
  while (!reached && proposals < target.max_iterations) {
    ++proposals;
    const std::size_t a = rs.uniform_index(zeros.size());
    const std::size_t b = rs.uniform_index(ones.size());
    const NodeId v0 = zeros[a], v1 = ones[b];
    // v0 becomes 1 and v1 becomes 0.
    const std::int64_t next = sum_fd + static_cast<std::int64_t>(deg[v0]) - deg[v1];
    const double rho_new = rho_of(next);
    if (!(std::abs(rho_new - target.target) < std::abs(rho - target.target))) continue;
    labels[v0] = 1;
    labels[v1] = 0;
    zeros[a] = v1;
    ones[b] = v0;
    sum_fd = next;
    rho = rho_new;
    ++swaps;
    reached = std::abs(rho - target.target) <= target.tolerance;
  }

  LabeledGraph lg(std::move(gp), std::move(labels));
  const double achieved = degree_label_correlation(lg);
  return {std::move(lg), achieved, proposals, swaps, std::abs(achieved - target.target) <= target.tolerance};
}

LabelResult assign_labels(const Graph& g, const LabelTarget& target, RandomStream& rs) {
  return assign_labels(std::make_shared<const Graph>(g), target, rs);
}

}  // namespace nepoll
