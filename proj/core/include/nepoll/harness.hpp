#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nepoll/analytics.hpp"
#include "nepoll/estimators.hpp"
#include "nepoll/graph.hpp"

namespace nepoll {

enum class GraphModel { Configuration, ErdosRenyi };

struct GraphSource {
  std::optional<std::filesystem::path> path;  // edge-list file; overrides the generator
  GraphModel model = GraphModel::Configuration;
  std::size_t node_count = 1000;
  double exponent = 2.4;
  std::size_t min_degree = 2;
  std::optional<std::size_t> max_degree;
  double edge_probability = 0.01;  // G(n, p) only
  std::optional<double> assortativity;  // rewire to this r_kk when set
  bool giant_component = true;  // keep only the largest connected component
};

struct LabelSource {
  std::optional<std::filesystem::path> path;
  double probability = 0.3;
  std::optional<double> degree_label_corr;  // swap labels toward this rho_kf when set
};

struct ExperimentConfig {
  GraphSource graph;
  LabelSource labels;
  std::vector<std::size_t> budgets;  // empty: default_budgets(n)
  std::size_t replications = 600;
  std::vector<EstimatorKind> estimators{std::begin(kAllEstimators), std::end(kAllEstimators)};
  std::optional<std::size_t> walk_length;
  bool lazy_walk = false;
  bool rw_exact_friend = false;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

/// Flat key = value text, one entry per line. `[section]` lines prefix the
/// keys that follow with "section.". '#' starts a comment outside quotes.
/// Lists are comma separated, optionally inside [ ]. Throws Parse.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every integer up to min(50, ceil(n/100)), then roughly log-spaced up to ceil(n/100).
std::vector<std::size_t> default_budgets(std::size_t node_count);

struct Dataset {
  std::optional<LabeledGraph> labeled;  // always set by load_dataset
  std::size_t duplicate_lines = 0;
  std::size_t missing_labels = 0;
  std::size_t unknown_labels = 0;
  std::size_t dropped_nodes = 0;  // isolated after erasure or outside the giant component
  std::optional<double> achieved_assortativity;
  std::optional<double> achieved_degree_label_corr;
  std::vector<std::string> warnings;
};

/// Reads or generates the graph and labels. Seeds for the generator, the
/// rewiring and the labels are derived from cfg.seed.
Dataset load_dataset(const ExperimentConfig& cfg);

struct SweepRow {
  EstimatorKind kind = EstimatorKind::IntentPolling;
  std::size_t budget = 1;
  double empirical_bias = 0.0;
  double empirical_variance = 0.0;  // population variance over replications
  double empirical_mse = 0.0;
  std::optional<double> exact_bias;
  std::optional<double> exact_variance;  // at this budget
  std::optional<double> exact_mse;
};

/// Replication r of (kind, budget) draws from derive_seed(cfg.seed, {k + 1, budget, r})
/// where k is the position of kind in kAllEstimators.
std::uint64_t replication_seed(std::uint64_t master, EstimatorKind kind, std::size_t budget,
                               std::size_t replication) noexcept;

/// Estimates for each replication in index order.
std::vector<double> run_replications(const LabeledGraph& lg, EstimatorKind kind, const PollConfig& base,
                                     std::uint64_t master_seed, std::size_t replications,
                                     std::size_t workers);

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, const LabeledGraph& lg);
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

inline constexpr const char* kSweepCsvHeader =
    "estimator,budget,emp_bias,emp_var,emp_mse,exact_bias,exact_var,exact_mse";

/// Shortest round-trip decimal form.
std::string format_double(double x);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct Report {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t min_degree = 0;
  GraphFlags flags;
  ParadoxCheck paradox;
  bool fosd_holds = false;
  double true_fraction = 0.0;
  std::optional<double> assortativity;
  std::optional<double> degree_label_corr;
  std::optional<SpectralSummary> spectrum;  // empty above the size cap
  std::optional<BudgetThreshold> threshold;  // empty when disconnected or no spectrum
  std::vector<ErrorReport> single_sample;   // b = 1; RW only when connected
};

Report run_report(const LabeledGraph& lg, std::size_t spectral_cap = kDefaultSpectralSizeCap);

/// Two-column `key,value` lines.
void write_report(std::ostream& out, const Report& report);

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Friendship paradox, FOSD, the RW bias identity, variance and bias bounds,
/// and agreement of the closed forms with enumeration. Spectral checks are
/// skipped above `spectral_cap` nodes.
std::vector<InvariantResult> check_invariants(const LabeledGraph& lg,
                                              std::size_t spectral_cap = kDefaultSpectralSizeCap);

}  // namespace nepoll
