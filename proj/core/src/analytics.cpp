#include "nepoll/analytics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "nepoll/error.hpp"

namespace nepoll {

namespace {

// Slack for comparisons between quantities that are equal in exact arithmetic.
constexpr double kRoundoff = 1e-12;

double as_double(std::size_t x) { return static_cast<double>(x); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// (A f)_v = number of labeled-1 neighbors of v.
std::vector<double> adjacency_times_labels(const LabeledGraph& lg) {
  const std::size_t n = lg.graph().node_count();
  std::vector<double> out(n);
  for (NodeId v = 0; v < n; ++v) out[v] = lg.positive_neighbors(v);
  return out;
}

// sum_{u in N(v)} 1/d(u)
std::vector<double> inverse_neighbor_degree_sums(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (const Edge& e : g.edges()) {
    out[e.u] += 1.0 / as_double(g.degree(e.v));
    out[e.v] += 1.0 / as_double(g.degree(e.u));
  }
  return out;
}

struct DegreeSums {
  double n = 0, m = 0;  // node count, M
  double d2 = 0, d3 = 0;
  double edge_products = 0;  // sum over edges of d(u) d(v)
};

DegreeSums degree_sums(const Graph& g) {
  DegreeSums s;
  s.n = as_double(g.node_count());
  s.m = as_double(g.edge_end_count());
  for (auto d : g.degrees()) {
    const double k = d;
    s.d2 += k * k;
    s.d3 += k * k * k;
  }
  for (const Edge& e : g.edges()) s.edge_products += as_double(g.degree(e.u)) * as_double(g.degree(e.v));
  return s;
}

ErrorReport finish(EstimatorKind kind, const LabeledGraph& lg, std::size_t budget, double bias,
                   double variance) {
  if (budget == 0) throw Error(ErrorCode::InvalidArgument, "sampling budget must be at least 1");
  ErrorReport r;
  r.kind = kind;
  r.budget = budget;
  r.bias = bias;
  r.variance_single_sample = std::max(variance, 0.0);
  r.variance_at_budget = r.variance_single_sample / as_double(budget);
  r.mse_at_budget = bias * bias + r.variance_at_budget;
  r.flags = lg.graph().flags();
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

LabelDegreeSummary label_degree_summary(const LabeledGraph& lg) {
  const Graph& g = lg.graph();
  const auto n = static_cast<long double>(g.node_count());
  const auto m = static_cast<long double>(g.edge_end_count());
  // Integer sums are exact; long double keeps n * sum(f d) exact well past
  // any graph this library handles.
  long double sum_fd = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) sum_fd += lg.label(v) * static_cast<long double>(g.degree(v));
  const auto sum_f = static_cast<long double>(lg.positive_count());
  const long double cov_numerator = n * sum_fd - sum_f * m;  // n^2 cov

  LabelDegreeSummary s;
  s.mean_degree = static_cast<double>(m / n);
  s.true_fraction = static_cast<double>(sum_f / n);
  s.label_variance = s.true_fraction * (1.0 - s.true_fraction);
  s.label_degree_cov = static_cast<double>(cov_numerator / (n * n));
  s.friend_label_mean = static_cast<double>(sum_fd / m);
  s.covariance_is_zero = cov_numerator == 0;
  return s;
}

double assortativity(const Graph& g) {
  if (g.min_degree() == g.max_degree())
    throw Error(ErrorCode::AssortativityUndefined, "assortativity undefined on a regular graph");
  const DegreeSums s = degree_sums(g);
  const double mean_q = s.d2 / s.m;
  const double var_q = s.d3 / s.m - mean_q * mean_q;
  // sum_{k,k'} k k' e(k,k') = 2 sum_edges d(u) d(v) / M
  const double cross = 2.0 * s.edge_products / s.m;
  return (cross - mean_q * mean_q) / var_q;
}

double degree_label_correlation(const LabeledGraph& lg) {
  const Graph& g = lg.graph();
  if (g.min_degree() == g.max_degree())
    throw Error(ErrorCode::DegreeLabelCorrUndefined, "degree-label correlation undefined: all degrees equal");
  if (lg.positive_count() == 0 || lg.positive_count() == g.node_count())
    throw Error(ErrorCode::DegreeLabelCorrUndefined, "degree-label correlation undefined: all labels equal");
  const LabelDegreeSummary s = label_degree_summary(lg);
  const DegreeSums d = degree_sums(g);
  const double var_k = d.d2 / d.n - s.mean_degree * s.mean_degree;
  return s.label_degree_cov / std::sqrt(var_k * s.label_variance);
}

NetworkStats network_stats(const LabeledGraph& lg) {
  const Graph& g = lg.graph();
  const double n = as_double(g.node_count());
  const double m = as_double(g.edge_end_count());
  NetworkStats st;

  std::map<std::size_t, std::size_t> counts;
  for (auto d : g.degrees()) ++counts[d];
  for (const auto& [k, c] : counts) {
    st.degree_dist[k] = as_double(c) / n;
    st.neighbor_degree_dist[k] = as_double(k) * as_double(c) / m;
  }
  for (const Edge& e : g.edges()) {
    const std::size_t a = g.degree(e.u), b = g.degree(e.v);
    st.joint_neighbor_dist[{a, b}] += 1.0 / m;
    st.joint_neighbor_dist[{b, a}] += 1.0 / m;
  }

  auto moments = [](const std::map<std::size_t, double>& dist) {
    double mean = 0.0, second = 0.0;
    for (const auto& [k, p] : dist) {
      mean += as_double(k) * p;
      second += as_double(k) * as_double(k) * p;
    }
    return std::make_pair(mean, std::max(second - mean * mean, 0.0));
  };
  const auto [mean_q, var_q] = moments(st.neighbor_degree_dist);
  const auto [mean_k, var_k] = moments(st.degree_dist);
  const double fbar = true_fraction(lg);
  st.sigma_q = std::sqrt(var_q);
  st.sigma_k = std::sqrt(var_k);
  st.sigma_f = std::sqrt(fbar * (1.0 - fbar));

  const bool regular = g.min_degree() == g.max_degree();
  if (!regular) {
    double cross = 0.0;
    for (const auto& [kk, p] : st.joint_neighbor_dist) cross += as_double(kk.first) * as_double(kk.second) * p;
    st.assortativity = (cross - mean_q * mean_q) / var_q;
  }
  if (!regular && lg.positive_count() != 0 && lg.positive_count() != g.node_count()) {
    // sum_k k (P(f=1, d=k) - P(f=1) P(k))
    double joint = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) joint += lg.label(v) * as_double(g.degree(v));
    joint = joint / n - fbar * mean_k;
    st.degree_label_corr = joint / (st.sigma_k * st.sigma_f);
  }

  double inv_degree_mean = 0.0;
  for (auto d : g.degrees()) inv_degree_mean += 1.0 / d;
  st.harmonic_mean_degree = n / inv_degree_mean;

  const auto inv_sums = inverse_neighbor_degree_sums(g);
  st.neighbor_harmonic_diag.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    st.neighbor_harmonic_diag[v] = as_double(g.degree(v)) / inv_sums[v];
  return st;
}

// ---------------------------------------------------------------------------

SpectralSummary spectral_summary(const Graph& g, std::size_t size_cap) {
  const std::size_t n = g.node_count();
  if (n > size_cap)
    throw Error(ErrorCode::SizeCapExceeded, "spectral summary needs a dense " + std::to_string(n) + "x" +
                                                std::to_string(n) + " matrix; cap is " + std::to_string(size_cap));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) {
    const double w = 1.0 / std::sqrt(as_double(g.degree(e.u)) * as_double(g.degree(e.v)));
    a(e.u, e.v) = w;
    a(e.v, e.u) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::InvalidArgument, "eigendecomposition did not converge");

  SpectralSummary s;
  s.singular_values.reserve(n);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    s.singular_values.push_back(std::clamp(std::abs(solver.eigenvalues()[i]), 0.0, 1.0));
  std::sort(s.singular_values.begin(), s.singular_values.end(), std::greater<>());
  s.lambda2 = s.singular_values.size() > 1 ? s.singular_values[1] : 0.0;
  s.lambda_n = s.singular_values.back();
  return s;
}

std::vector<double> apply_normalized_adjacency(const Graph& g, std::span<const double> x) {
  std::vector<double> inv_sqrt_d(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) inv_sqrt_d[v] = 1.0 / std::sqrt(as_double(g.degree(v)));
  std::vector<double> y(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double acc = 0.0;
    for (NodeId u : g.neighbors(v)) acc += x[u] * inv_sqrt_d[u];
    y[v] = acc * inv_sqrt_d[v];
  }
  return y;
}

// ---------------------------------------------------------------------------

ErrorReport exact_error_ip(const LabeledGraph& lg, std::size_t budget) {
  const double fbar = true_fraction(lg);
  return finish(EstimatorKind::IntentPolling, lg, budget, 0.0, fbar * (1.0 - fbar));
}

ErrorReport exact_error_rw(const LabeledGraph& lg, std::size_t budget) {
  const Graph& g = lg.graph();
  const std::size_t n = g.node_count();
  const double m = as_double(g.edge_end_count());
  const LabelDegreeSummary s = label_degree_summary(lg);

  // bias = cov{f(X), d(X)} / E[d(X)]
  const double bias = s.label_degree_cov / s.mean_degree;

  // Var = (1/M) f^T D^{1/2} (A_n^2 - D^{1/2} 1 1^T D^{1/2} / M) D^{1/2} f
  //     = (1/M) (|A_n x|^2 - (sqrt(d) . x)^2 / M),  x = D^{1/2} f
  std::vector<double> x(n), sqrt_d(n);
  for (NodeId v = 0; v < n; ++v) {
    sqrt_d[v] = std::sqrt(as_double(g.degree(v)));
    x[v] = sqrt_d[v] * lg.label(v);
  }
  const auto y = apply_normalized_adjacency(g, x);
  const double proj = dot(sqrt_d, x);
  const double variance = (dot(y, y) - proj * proj / m) / m;

  return finish(EstimatorKind::RandomWalkNep, lg, budget, bias, variance);
}

ErrorReport exact_error_rw(const LabeledGraph& lg, std::size_t budget, const SpectralSummary& spectrum) {
  ErrorReport r = exact_error_rw(lg, budget);
  r.variance_upper_bound = spectrum.lambda2 * spectrum.lambda2 * label_degree_summary(lg).friend_label_mean;
  return r;
}

ErrorReport exact_error_un(const LabeledGraph& lg, std::size_t budget) {
  const Graph& g = lg.graph();
  const std::size_t n = g.node_count();
  const double nn = as_double(n);
  const LabelDegreeSummary s = label_degree_summary(lg);

  // w = D^{-1/2} A_n D^{1/2} f = D^{-1} A f, so E[f(Z)] = mean(w) and
  // Var = (1/n) w^T (I - 1 1^T / n) w.
  std::vector<double> x(n);
  for (NodeId v = 0; v < n; ++v) x[v] = std::sqrt(as_double(g.degree(v))) * lg.label(v);
  auto w = apply_normalized_adjacency(g, x);
  for (NodeId v = 0; v < n; ++v) w[v] /= std::sqrt(as_double(g.degree(v)));
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double mean_fz = total / nn;
  const double variance = (dot(w, w) - total * total / nn) / nn;

  ErrorReport r = finish(EstimatorKind::NaiveNep, lg, budget, mean_fz - s.true_fraction, variance);
  r.variance_upper_bound = s.friend_label_mean * s.mean_degree / as_double(g.min_degree());
  return r;
}

ErrorReport exact_error_fn(const LabeledGraph& lg, std::size_t budget) {
  const Graph& g = lg.graph();
  const std::size_t n = g.node_count();
  const double nn = as_double(n);

  // E[q(Z)] = (1/n) 1^T D^{-1} A D^{-1} A f
  const auto af = adjacency_times_labels(lg);
  std::vector<double> q(n);
  for (NodeId v = 0; v < n; ++v) q[v] = af[v] / as_double(g.degree(v));
  double mean_qz = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    double acc = 0.0;
    for (NodeId u : g.neighbors(v)) acc += q[u];
    mean_qz += acc / as_double(g.degree(v));
  }
  mean_qz /= nn;

  // E[q^2(Z)] = (1/n) f^T A D_hm^{-1} D^{-1} A f with
  // D_hm(v,v)^{-1} = (sum_{u in N(v)} 1/d(u)) / d(v).
  const auto inv_sums = inverse_neighbor_degree_sums(g);
  double second = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double d = as_double(g.degree(v));
    second += af[v] * af[v] * inv_sums[v] / (d * d);
  }
  second /= nn;

  return finish(EstimatorKind::FriendOfNodeNep, lg, budget, mean_qz - true_fraction(lg),
                second - mean_qz * mean_qz);
}

ErrorReport exact_error_fn(const LabeledGraph& lg, std::size_t budget, const SpectralSummary& spectrum) {
  ErrorReport r = exact_error_fn(lg, budget);
  const LabelDegreeSummary s = label_degree_summary(lg);
  double inv_degree_mean = 0.0;
  for (auto d : lg.graph().degrees()) inv_degree_mean += 1.0 / d;
  inv_degree_mean /= as_double(lg.graph().node_count());
  const double gap = spectrum.lambda_n * spectrum.lambda_n - 1.0;
  // E[d(X)] / harmonic mean = E[d(X)] E[1/d(X)]
  r.bias_squared_upper_bound = gap * gap * s.friend_label_mean * s.mean_degree * inv_degree_mean;
  return r;
}

ErrorReport exact_error(EstimatorKind kind, const LabeledGraph& lg, std::size_t budget,
                        const SpectralSummary* spectrum) {
  switch (kind) {
    case EstimatorKind::IntentPolling: return exact_error_ip(lg, budget);
    case EstimatorKind::NaiveNep: return exact_error_un(lg, budget);
    case EstimatorKind::RandomWalkNep:
      return spectrum ? exact_error_rw(lg, budget, *spectrum) : exact_error_rw(lg, budget);
    case EstimatorKind::FriendOfNodeNep:
      return spectrum ? exact_error_fn(lg, budget, *spectrum) : exact_error_fn(lg, budget);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown estimator kind");
}

double fn_bias_normalized_form(const LabeledGraph& lg) {
  const Graph& g = lg.graph();
  const std::size_t n = g.node_count();
  std::vector<double> x(n);
  for (NodeId v = 0; v < n; ++v) x[v] = std::sqrt(as_double(g.degree(v))) * lg.label(v);
  const auto y1 = apply_normalized_adjacency(g, x);
  const auto y2 = apply_normalized_adjacency(g, y1);
  double acc = 0.0;
  for (NodeId v = 0; v < n; ++v) acc += (y2[v] - x[v]) / std::sqrt(as_double(g.degree(v)));
  return acc / as_double(n);
}

// ---------------------------------------------------------------------------

BudgetThreshold budget_threshold(const LabeledGraph& lg, double lambda2) {
  const LabelDegreeSummary s = label_degree_summary(lg);
  const double numerator = s.label_variance - lambda2 * lambda2 * s.friend_label_mean;
  if (s.covariance_is_zero) {
    if (numerator >= 0.0) return {BudgetThreshold::Kind::Infinite, std::numeric_limits<double>::infinity()};
    return {BudgetThreshold::Kind::NonPositive, -std::numeric_limits<double>::infinity()};
  }
  const double value =
      numerator * s.mean_degree * s.mean_degree / (s.label_degree_cov * s.label_degree_cov);
  if (numerator < 0.0) return {BudgetThreshold::Kind::NonPositive, value};
  return {BudgetThreshold::Kind::Finite, value};
}

BudgetThreshold budget_threshold(const LabeledGraph& lg) {
  return budget_threshold(lg, spectral_summary(lg.graph()).lambda2);
}

// ---------------------------------------------------------------------------

ParadoxCheck friendship_paradox_check(const Graph& g) {
  const DegreeSums s = degree_sums(g);
  ParadoxCheck c;
  c.mean_degree_node = s.m / s.n;
  c.mean_degree_friend = s.d2 / s.m;
  double z = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double acc = 0.0;
    for (NodeId u : g.neighbors(v)) acc += as_double(g.degree(u));
    z += acc / as_double(g.degree(v));
  }
  c.mean_degree_friend_of_node = z / s.n;
  const double slack = kRoundoff * c.mean_degree_node;
  c.holds = c.mean_degree_friend >= c.mean_degree_node - slack &&
            c.mean_degree_friend_of_node >= c.mean_degree_node - slack;
  return c;
}

FosdCheck fosd_check(const Graph& g) {
  const double n = as_double(g.node_count());
  const double m = as_double(g.edge_end_count());
  std::map<std::size_t, double> px, py, pz;
  for (auto d : g.degrees()) {
    px[d] += 1.0 / n;
    py[d] += as_double(d) / m;
  }
  // P(Z = v) = (1/n) sum_{u in N(v)} 1/d(u)
  const auto inv_sums = inverse_neighbor_degree_sums(g);
  for (NodeId v = 0; v < g.node_count(); ++v) pz[g.degree(v)] += inv_sums[v] / n;

  FosdCheck c;
  c.holds = true;
  double fx = 0.0, fy = 0.0, fz = 0.0;
  for (const auto& [k, p] : px) {
    fx += p;
    fy += py[k];
    fz += pz[k];
    c.table.push_back({k, fx, fy, fz});
    if (fz > fx + kRoundoff) c.holds = false;
  }
  return c;
}

// ---------------------------------------------------------------------------

Moments brute_force_estimator_law(const LabeledGraph& lg, SamplingLaw law) {
  const Graph& g = lg.graph();
  const std::size_t n = g.node_count();
  struct Outcome {
    double weight;
    double value;
  };
  std::vector<Outcome> outcomes;

  // q(v) straight from its definition: count labeled neighbors.
  auto response = [&](NodeId v) {
    std::size_t ones = 0;
    for (NodeId u : g.neighbors(v)) ones += lg.label(u);
    return as_double(ones) / as_double(g.degree(v));
  };

  switch (law) {
    case SamplingLaw::IntentPolling:
      for (NodeId v = 0; v < n; ++v) outcomes.push_back({1.0 / as_double(n), as_double(lg.label(v))});
      break;
    case SamplingLaw::NaiveNep:
      for (NodeId v = 0; v < n; ++v) outcomes.push_back({1.0 / as_double(n), response(v)});
      break;
    case SamplingLaw::RandomWalkStationary:
      // one outcome per edge end
      for (const Edge& e : g.edges()) {
        outcomes.push_back({1.0 / as_double(g.edge_end_count()), response(e.u)});
        outcomes.push_back({1.0 / as_double(g.edge_end_count()), response(e.v)});
      }
      break;
    case SamplingLaw::FriendOfNode:
      for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : g.neighbors(v))
          outcomes.push_back({1.0 / (as_double(n) * as_double(g.degree(v))), response(u)});
      }
      break;
  }

  Moments mo;
  for (const Outcome& o : outcomes) mo.mean += o.weight * o.value;
  for (const Outcome& o : outcomes) mo.variance += o.weight * (o.value - mo.mean) * (o.value - mo.mean);
  return mo;
}

}  // namespace nepoll
