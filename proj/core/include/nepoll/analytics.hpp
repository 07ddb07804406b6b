#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nepoll/estimators.hpp"
#include "nepoll/graph.hpp"

namespace nepoll {

// ---------------------------------------------------------------------------
// Network statistics
// ---------------------------------------------------------------------------

struct NetworkStats {
  std::map<std::size_t, double> degree_dist;            // P(k), law of d(X)
  std::map<std::size_t, double> neighbor_degree_dist;   // q(k), law of d(Y)
  std::map<std::pair<std::size_t, std::size_t>, double> joint_neighbor_dist;  // e(k,k')
  double sigma_q = 0.0;
  double sigma_k = 0.0;
  double sigma_f = 0.0;
  /// r_kk; empty on regular graphs (sigma_q = 0).
  std::optional<double> assortativity;
  /// rho_kf; empty when sigma_k = 0 or sigma_f = 0.
  std::optional<double> degree_label_corr;
  double harmonic_mean_degree = 0.0;           // 1 / E[1/d(X)]
  std::vector<double> neighbor_harmonic_diag;  // D_hm(v,v)
};

/// Everything computed exactly by enumeration over nodes and edge ends.
/// Undefined correlations are left empty; the standalone functions below throw.
NetworkStats network_stats(const LabeledGraph& lg);

/// Degree correlation across edges computed from e(k,k') and the neighbor
/// degree marginal q(k). Throws AssortativityUndefined on a regular graph.
double assortativity(const Graph& g);

/// Correlation between d(X) and f(X). Throws DegreeLabelCorrUndefined when
/// either standard deviation is zero.
double degree_label_correlation(const LabeledGraph& lg);

/// First and second moments linking labels and degrees, from integer sums.
struct LabelDegreeSummary {
  double mean_degree = 0.0;        // E[d(X)] = M / n
  double true_fraction = 0.0;      // E[f(X)]
  double label_variance = 0.0;     // Var{f(X)}
  double label_degree_cov = 0.0;   // cov{f(X), d(X)}
  double friend_label_mean = 0.0;  // E[f(Y)] = sum_v d(v) f(v) / M
  bool covariance_is_zero = false; // exact test on the integer numerator
};

LabelDegreeSummary label_degree_summary(const LabeledGraph& lg);

// ---------------------------------------------------------------------------
// Spectrum of the normalized adjacency D^{-1/2} A D^{-1/2}
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultSpectralSizeCap = 20000;

struct SpectralSummary {
  std::vector<double> singular_values;  // descending, clamped to [0, 1]
  double lambda2 = 0.0;                 // second largest
  double lambda_n = 0.0;                // smallest
};

/// Dense symmetric eigendecomposition; singular values are |eigenvalues|.
/// Throws SizeCapExceeded when n > size_cap.
SpectralSummary spectral_summary(const Graph& g, std::size_t size_cap = kDefaultSpectralSizeCap);

/// y = D^{-1/2} A D^{-1/2} x using adjacency lists.
std::vector<double> apply_normalized_adjacency(const Graph& g, std::span<const double> x);

// ---------------------------------------------------------------------------
// Exact error of each estimator
// ---------------------------------------------------------------------------

struct ErrorReport {
  EstimatorKind kind = EstimatorKind::IntentPolling;
  std::size_t budget = 1;
  double bias = 0.0;
  double variance_single_sample = 0.0;
  double variance_at_budget = 0.0;  // variance_single_sample / budget
  double mse_at_budget = 0.0;       // bias^2 + variance_at_budget
  /// Upper bound on variance_single_sample: lambda2^2 E[f(Y)] for RW,
  /// E[f(Y)] E[d(X)] / d_min for UN. Empty where no bound exists or the
  /// spectrum was not computed.
  std::optional<double> variance_upper_bound;
  /// FN only: (lambda_n^2 - 1)^2 E[f(Y)] E[d(X)] / harmonic mean degree.
  std::optional<double> bias_squared_upper_bound;
  /// RW formulas describe the walk's stationary law, which the walk reaches
  /// only on connected non-bipartite graphs.
  GraphFlags flags;
};

/// Intent polling: unbiased, single-sample variance f(1 - f).
ErrorReport exact_error_ip(const LabeledGraph& lg, std::size_t budget);

/// Random-walk polling in the N -> infinity limit. The variance bound needs
/// lambda2 and is left empty without a spectrum.
ErrorReport exact_error_rw(const LabeledGraph& lg, std::size_t budget);
ErrorReport exact_error_rw(const LabeledGraph& lg, std::size_t budget, const SpectralSummary& spectrum);

ErrorReport exact_error_un(const LabeledGraph& lg, std::size_t budget);

ErrorReport exact_error_fn(const LabeledGraph& lg, std::size_t budget);
ErrorReport exact_error_fn(const LabeledGraph& lg, std::size_t budget, const SpectralSummary& spectrum);

/// Dispatch; `spectrum` may be null.
ErrorReport exact_error(EstimatorKind kind, const LabeledGraph& lg, std::size_t budget,
                        const SpectralSummary* spectrum = nullptr);

/// FN bias written as (1/n) 1^T D^{-1/2} (A_norm^2 - I) D^{1/2} f, evaluated
/// with normalized-adjacency products. Cross-check for exact_error_fn.
double fn_bias_normalized_form(const LabeledGraph& lg);

// ---------------------------------------------------------------------------
// Budget threshold for random-walk polling to beat intent polling
// ---------------------------------------------------------------------------

struct BudgetThreshold {
  enum class Kind { Finite, Infinite, NonPositive };
  Kind kind = Kind::Finite;
  double value = 0.0;  // meaningful for Finite and NonPositive
};

/// (Var{f(X)} - lambda2^2 E[f(Y)]) E[d(X)]^2 / cov{f(X),d(X)}^2.
BudgetThreshold budget_threshold(const LabeledGraph& lg, double lambda2);
BudgetThreshold budget_threshold(const LabeledGraph& lg);

// ---------------------------------------------------------------------------
// Friendship paradox checks
// ---------------------------------------------------------------------------

struct ParadoxCheck {
  double mean_degree_node = 0.0;            // E[d(X)]
  double mean_degree_friend = 0.0;          // E[d(Y)]
  double mean_degree_friend_of_node = 0.0;  // E[d(Z)]
  bool holds = false;
};

ParadoxCheck friendship_paradox_check(const Graph& g);

struct FosdRow {
  std::size_t degree = 0;
  double cdf_node = 0.0;            // F_{d(X)}(k)
  double cdf_friend = 0.0;          // F_{d(Y)}(k), reported alongside
  double cdf_friend_of_node = 0.0;  // F_{d(Z)}(k)
};

struct FosdCheck {
  bool holds = false;
  std::vector<FosdRow> table;  // one row per distinct degree, ascending
};

/// Verifies F_{d(Z)}(k) <= F_{d(X)}(k) for every k from exact marginals.
FosdCheck fosd_check(const Graph& g);

// ---------------------------------------------------------------------------
// Enumeration oracle
// ---------------------------------------------------------------------------

enum class SamplingLaw { IntentPolling, NaiveNep, RandomWalkStationary, FriendOfNode };

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Exact mean and variance of one response by enumerating the sampling law:
/// f(v) uniform over nodes, q(v) uniform over nodes, q(v) weighted d(v)/M,
/// q(u) over (v, u in N(v)) pairs weighted 1/(n d(v)).
Moments brute_force_estimator_law(const LabeledGraph& lg, SamplingLaw law);

}  // namespace nepoll
