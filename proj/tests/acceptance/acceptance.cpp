// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nepoll/analytics.hpp"
#include "nepoll/error.hpp"
#include "nepoll/estimators.hpp"
#include "nepoll/harness.hpp"
#include "nepoll/netgen.hpp"
#include "nepoll/sampling.hpp"

namespace {

using namespace nepoll;

constexpr double kOracleTolerance = 1e-10;     // criterion 1
constexpr double kIdentityTolerance = 1e-12;   // criterion 3
constexpr double kBoundSlack = 1e-12;          // criterion 4, floating-point roundoff only
constexpr double kOrderingSigmas = 3.0;        // criterion 5
constexpr double kBandStandardErrors = 2.0;    // criterion 6
constexpr double kTargetTolerance = 0.02;      // criterion 8
constexpr double kTotalVariationLimit = 0.02;  // criterion 9

constexpr double kLimit1 = 60.0, kLimit2 = 120.0, kLimit5 = 300.0, kLimit6 = 600.0, kLimit8 = 300.0;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Graph from_pairs(const std::vector<InputEdge>& pairs) { return largest_connected_component(build_graph(pairs)); }

// Suite of small graphs: G(n, 0.2), G(n, 0.5), configuration model, star, cycle, path.
std::vector<LabeledGraph> small_suite(std::size_t count, std::uint64_t seed) {
  RandomStream rs(seed);
  std::vector<LabeledGraph> suite;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 4 + rs.uniform_index(47);
    std::vector<InputEdge> pairs;
    Graph g = [&] {
      switch (i % 6) {
        case 0:
        case 1: {
          const double p = i % 6 == 0 ? 0.2 : 0.5;
          for (std::uint64_t u = 0; u < n; ++u)
            for (std::uint64_t v = u + 1; v < n; ++v)
              if (rs.bernoulli(p)) pairs.push_back({u, v});
          if (pairs.empty()) pairs.push_back({0, 1});
          return from_pairs(pairs);
        }
        case 2: return largest_connected_component(configuration_model({n, 2.4, 1, n - 1, rs.next()}).graph);
        case 3:
          for (std::uint64_t v = 1; v < n; ++v) pairs.push_back({0, v});
          return from_pairs(pairs);
        case 4:
          for (std::uint64_t v = 0; v < n; ++v) pairs.push_back({v, (v + 1) % n});
          return from_pairs(pairs);
        default:
          for (std::uint64_t v = 0; v + 1 < n; ++v) pairs.push_back({v, v + 1});
          return from_pairs(pairs);
      }
    }();
    const double p = 0.1 + 0.8 * rs.uniform01();
    auto shared = std::make_shared<const Graph>(std::move(g));
    suite.emplace_back(shared, bernoulli_labels(shared->node_count(), p, rs));
  }
  return suite;
}

Outcome oracle_equivalence(const std::vector<LabeledGraph>& suite) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const LabeledGraph& lg : suite) {
    const double fbar = true_fraction(lg);
    const std::pair<SamplingLaw, ErrorReport> cases[] = {
        {SamplingLaw::NaiveNep, exact_error_un(lg, 1)},
        {SamplingLaw::RandomWalkStationary, exact_error_rw(lg, 1)},
        {SamplingLaw::FriendOfNode, exact_error_fn(lg, 1)},
    };
    for (const auto& [law, report] : cases) {
      const Moments m = brute_force_estimator_law(lg, law);
      worst = std::max({worst, std::abs(m.mean - fbar - report.bias),
                        std::abs(m.variance - report.variance_single_sample)});
    }
  }
  const double t = seconds_since(start);
  return {worst <= kOracleTolerance && t < kLimit1,
          fmt("%zu graphs, max |closed form - enumeration| = %.3g (tol %.0e), %.2fs", suite.size(), worst,
              kOracleTolerance, t)};
}

Outcome paradox_universality(const std::vector<LabeledGraph>& suite, const std::vector<Graph>& generated) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t failures = 0, checked = 0;
  auto check = [&](const Graph& g) {
    ++checked;
    if (!friendship_paradox_check(g).holds || !fosd_check(g).holds) ++failures;
  };
  for (const auto& lg : suite) check(lg.graph());
  for (const auto& g : generated) check(g);
  const double t = seconds_since(start);
  return {failures == 0 && t < kLimit2,
          fmt("%zu graphs (%zu generated, n <= 5000), %zu failures, %.2fs", checked, generated.size(), failures, t)};
}

Outcome bias_identity(const std::vector<LabeledGraph>& suite) {
  double worst = 0.0;
  for (const LabeledGraph& lg : suite) {
    const Graph& g = lg.graph();
    // Left side from node sums, right side from edge ends.
    const LabelDegreeSummary s = label_degree_summary(lg);
    const double lhs = s.label_degree_cov / s.mean_degree;
    double friend_label = 0.0;
    for (const Edge& e : g.edges()) friend_label += lg.label(e.u) + lg.label(e.v);
    friend_label /= static_cast<double>(g.edge_end_count());
    worst = std::max(worst, std::abs(lhs - (friend_label - true_fraction(lg))));
  }
  return {worst <= kIdentityTolerance, fmt("%zu graphs, max gap %.3g (tol %.0e)", suite.size(), worst, kIdentityTolerance)};
}

Outcome bound_soundness(const std::vector<LabeledGraph>& suite) {
  std::size_t violations = 0;
  double tightest = 1e300;
  for (const LabeledGraph& lg : suite) {
    const SpectralSummary spec = spectral_summary(lg.graph());
    const ErrorReport rw = exact_error_rw(lg, 1, spec), un = exact_error_un(lg, 1);
    const double rw_bound = *rw.variance_upper_bound, un_bound = *un.variance_upper_bound;
    if (rw.variance_single_sample > rw_bound + kBoundSlack) ++violations;
    if (un.variance_single_sample > un_bound + kBoundSlack) ++violations;
    if (rw_bound > un_bound + kBoundSlack) ++violations;
    tightest = std::min({tightest, rw_bound - rw.variance_single_sample, un_bound - un.variance_single_sample,
                         un_bound - rw_bound});
  }
  return {violations == 0, fmt("%zu graphs, %zu violations, smallest margin %.3g (slack %.0e)", suite.size(), violations,
                               tightest, kBoundSlack)};
}

Outcome mse_ordering(std::vector<Graph>& generated) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t reps = 10000, budget = 10;
  auto graph = std::make_shared<const Graph>(
      largest_connected_component(configuration_model({1000, 2.4, 2, std::nullopt, 501}).graph));
  generated.push_back(*graph);
  PollConfig cfg;
  cfg.budget = budget;
  cfg.exact_friend_mode = true;
  std::vector<double> d_fn(reps), d_rw(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RandomStream rs(derive_seed(502, {r}));
    const LabeledGraph lg(graph, bernoulli_labels(graph->node_count(), 0.3, rs));
    const double f = true_fraction(lg);
    auto sq = [&](EstimatorKind kind) {
      const double e = run_estimator(kind, lg, cfg, rs) - f;
      return e * e;
    };
    const double un = sq(EstimatorKind::NaiveNep);
    d_fn[r] = un - sq(EstimatorKind::FriendOfNodeNep);
    d_rw[r] = un - sq(EstimatorKind::RandomWalkNep);
  }
  auto z_score = [&](const std::vector<double>& d, double& mean) {
    mean = 0.0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (double x : d) var += (x - mean) * (x - mean);
    var /= static_cast<double>(d.size() - 1);
    return mean / std::sqrt(var / static_cast<double>(d.size()));
  };
  double m_fn = 0.0, m_rw = 0.0;
  const double z_fn = z_score(d_fn, m_fn), z_rw = z_score(d_rw, m_rw);
  const double t = seconds_since(start);
  return {z_fn >= kOrderingSigmas && z_rw >= kOrderingSigmas && t < kLimit5,
          fmt("n=%zu b=%zu reps=%zu: MSE(UN)-MSE(FN)=%.3g (%.1f sigma), MSE(UN)-MSE(RW)=%.3g (%.1f sigma), %.1fs",
              graph->node_count(), budget, reps, m_fn, z_fn, m_rw, z_rw, t)};
}

struct MseEstimate {
  double mse = 0.0;
  double se = 0.0;
};

MseEstimate mse_of(const std::vector<double>& values, double truth) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += (v - truth) * (v - truth);
  mean /= n;
  double var = 0.0;
  for (double v : values) {
    const double s = (v - truth) * (v - truth) - mean;
    var += s * s;
  }
  var /= n - 1;
  return {mean, std::sqrt(var / n)};
}

Outcome figure_reproduction(std::vector<Graph>& generated) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.graph.node_count = 2000;
  cfg.graph.exponent = 2.4;
  cfg.graph.assortativity = 0.0;
  cfg.labels.probability = 0.3;
  cfg.labels.degree_label_corr = 0.0;
  cfg.replications = 600;
  cfg.seed = 2024;
  const Dataset data = load_dataset(cfg);
  const LabeledGraph& lg = *data.labeled;
  generated.push_back(lg.graph());
  const double f = true_fraction(lg);

  bool ok = true;
  std::string detail = fmt("n=%zu r_kk=%.3f rho_kf=%.3f;", lg.graph().node_count(), *data.achieved_assortativity,
                           *data.achieved_degree_label_corr);
  for (std::size_t b : {1u, 2u, 5u, 10u, 20u}) {
    PollConfig poll;
    poll.budget = b;
    auto est = [&](EstimatorKind kind) {
      return mse_of(run_replications(lg, kind, poll, cfg.seed, cfg.replications, 1), f);
    };
    const MseEstimate ip = est(EstimatorKind::IntentPolling), rw = est(EstimatorKind::RandomWalkNep),
                      fn = est(EstimatorKind::FriendOfNodeNep);
    const double ip_low = ip.mse - kBandStandardErrors * ip.se;
    const bool good = rw.mse + kBandStandardErrors * rw.se < ip_low && fn.mse + kBandStandardErrors * fn.se < ip_low;
    ok = ok && good;
    detail += fmt(" b=%zu IP=%.4f RW=%.4f FN=%.4f%s", b, ip.mse, rw.mse, fn.mse, good ? "" : "(!)");
  }
  const double t = seconds_since(start);
  return {ok && t < kLimit6, detail + fmt("; %.1fs", t)};
}

Outcome budget_threshold_consistency(std::uint64_t seed) {
  RandomStream rs(seed);
  std::size_t graphs = 0, budgets_checked = 0, finite = 0, violations = 0, draws = 0;
  while (graphs < 50 && draws < 100000) {
    ++draws;
    const auto candidate = small_suite(1, rs.next());
    const LabeledGraph& lg = candidate.front();
    const LabelDegreeSummary s = label_degree_summary(lg);
    if (s.covariance_is_zero) continue;
    const SpectralSummary spec = spectral_summary(lg.graph());
    if (!(spec.lambda2 < 1.0)) continue;
    ++graphs;
    const BudgetThreshold th = budget_threshold(lg, spec.lambda2);
    if (th.kind != BudgetThreshold::Kind::Finite) continue;
    ++finite;
    const double bias = exact_error_rw(lg, 1).bias;
    const double l2 = spec.lambda2 * spec.lambda2 * s.friend_label_mean;
    for (std::size_t b = 1; static_cast<double>(b) < th.value; ++b) {
      ++budgets_checked;
      const double bd = static_cast<double>(b);
      if (!(bias * bias + l2 / bd <= s.label_variance / bd)) ++violations;
    }
  }
  return {graphs == 50 && violations == 0 && budgets_checked > 0,
          fmt("%zu graphs (%zu with a finite threshold), %zu budgets checked, %zu violations", graphs, finite,
              budgets_checked, violations)};
}

Outcome generator_targets(std::vector<Graph>& generated) {
  bool ok = true;
  std::string detail;
  double slowest = 0.0;
  const Graph base = configuration_model({5000, 2.4, 1, std::nullopt, 808}).graph;
  auto degrees = [](const Graph& g) { return std::vector<std::uint32_t>(g.degrees().begin(), g.degrees().end()); };
  for (double target : {-0.2, 0.0, 0.2}) {
    const auto start = std::chrono::steady_clock::now();
    RandomStream rs(derive_seed(809, {static_cast<std::uint64_t>(target * 10 + 10)}));
    const RewireResult r = rewire_to_assortativity(base, {target, kTargetTolerance}, rs);
    slowest = std::max(slowest, seconds_since(start));
    const bool good = std::abs(r.achieved - target) <= kTargetTolerance && degrees(r.graph) == degrees(base);
    ok = ok && good;
    detail += fmt(" r_kk %+.1f->%.4f%s", target, r.achieved, good ? "" : "(!)");
    generated.push_back(r.graph);
  }
  const auto labeled_base = std::make_shared<const Graph>(base);
  for (double target : {-0.1, 0.0, 0.1}) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = derive_seed(810, {static_cast<std::uint64_t>(target * 10 + 10)});
    RandomStream initial_rs(seed);
    const LabeledGraph initial(labeled_base, bernoulli_labels(base.node_count(), 0.3, initial_rs));
    RandomStream rs(seed);
    const LabelResult r = assign_labels(labeled_base, {0.3, target, kTargetTolerance}, rs);
    slowest = std::max(slowest, seconds_since(start));
    const bool good = std::abs(r.achieved - target) <= kTargetTolerance &&
                      true_fraction(r.labeled) == true_fraction(initial);
    ok = ok && good;
    detail += fmt(" rho_kf %+.1f->%.4f%s", target, r.achieved, good ? "" : "(!)");
  }
  return {ok && slowest < kLimit8, fmt("n=%zu;", base.node_count()) + detail + fmt("; slowest run %.2fs", slowest)};
}

Outcome walk_convergence(std::vector<Graph>& generated) {
  const Graph g = largest_connected_component(configuration_model({500, 2.4, 2, std::nullopt, 909}).graph);
  generated.push_back(g);
  if (!g.flags().connected || g.flags().bipartite) return {false, "test graph is not connected and non-bipartite"};
  const std::size_t walks = 1000000;
  const WalkConfig cfg{default_walk_length(g.node_count()), walks};
  RandomStream rs(910);
  std::vector<std::size_t> hits(g.node_count(), 0);
  for (NodeId v : random_walk_endpoints(g, cfg, rs)) ++hits[v];
  double tv = 0.0;
  const double m = static_cast<double>(g.edge_end_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    tv += std::abs(static_cast<double>(hits[v]) / walks - static_cast<double>(g.degree(v)) / m);
  tv /= 2.0;
  return {tv < kTotalVariationLimit,
          fmt("n=%zu N=%zu walks=%zu TV=%.4f (limit %.2f)", g.node_count(), cfg.length, walks, tv, kTotalVariationLimit)};
}

Outcome sweep_determinism() {
  ExperimentConfig cfg;
  cfg.graph.node_count = 1000;
  cfg.graph.assortativity = 0.1;
  cfg.labels.degree_label_corr = 0.05;
  cfg.budgets = {1, 2, 5, 10};
  cfg.replications = 200;
  cfg.seed = 77;
  auto csv = [&](std::size_t workers) {
    cfg.workers = workers;
    std::ostringstream out;
    write_sweep_csv(out, run_sweep(cfg));
    return out.str();
  };
  const std::string one = csv(1), four = csv(4);
  return {one == four && !one.empty(), fmt("%zu bytes, workers 1 vs 4 %s", one.size(), one == four ? "identical" : "differ")};
}

}  // namespace

int main() {
  using Check = std::pair<const char*, std::function<Outcome()>>;
  const auto suite = small_suite(200, 1234);
  std::vector<Graph> generated;
  for (double alpha : {2.1, 2.4, 3.1}) generated.push_back(configuration_model({5000, alpha, 1, std::nullopt, 55}).graph);
  generated.push_back(erdos_renyi({5000, 0.01, 56}));

  // Criterion 2 runs last so it also covers every graph generated by the other checks.
  const std::vector<std::pair<int, Check>> checks{
      {1, {"oracle equivalence", [&] { return oracle_equivalence(suite); }}},
      {3, {"random-walk bias identity", [&] { return bias_identity(suite); }}},
      {4, {"bound soundness", [&] { return bound_soundness(suite); }}},
      {5, {"MSE ordering under iid labels", [&] { return mse_ordering(generated); }}},
      {6, {"scaled MSE comparison vs intent polling", [&] { return figure_reproduction(generated); }}},
      {7, {"budget threshold consistency", [&] { return budget_threshold_consistency(4321); }}},
      {8, {"generator and modifier targets", [&] { return generator_targets(generated); }}},
      {9, {"random-walk convergence", [&] { return walk_convergence(generated); }}},
      {10, {"sweep determinism across worker counts", [&] { return sweep_determinism(); }}},
      {2, {"friendship paradox and FOSD universality", [&] { return paradox_universality(suite, generated); }}},
  };

  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& [id, check] : checks) {
    Outcome o;
    try {
      o = check.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    lines.emplace_back(id, fmt("criterion %2d %s: %s: %s", id, o.passed ? "PASS" : "FAIL", check.first, o.detail.c_str()));
    std::fflush(stdout);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
