#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "nepoll/graph.hpp"
#include "nepoll/random.hpp"

namespace nepoll {

enum class EstimatorKind {
  IntentPolling,    // IP: mean label of uniform nodes
  NaiveNep,         // UN: mean NEP response of uniform nodes
  RandomWalkNep,    // RW: mean NEP response of random-walk endpoints
  FriendOfNodeNep,  // FN: mean NEP response of a random neighbor of uniform nodes
};

inline constexpr EstimatorKind kAllEstimators[] = {
    EstimatorKind::IntentPolling, EstimatorKind::NaiveNep, EstimatorKind::RandomWalkNep,
    EstimatorKind::FriendOfNodeNep};

/// "IP", "UN", "RW", "FN".
std::string_view to_string(EstimatorKind kind);
std::optional<EstimatorKind> parse_estimator_kind(std::string_view text);

struct PollConfig {
  std::size_t budget = 1;                  // b, number of individuals queried
  std::optional<std::size_t> walk_length;  // N for RW; default_walk_length(n) when unset
  std::uint64_t seed = 0;
  bool lazy_walk = false;
  /// RW only: draw each sample as a random friend straight from the edge list
  /// instead of walking. Isolates estimator logic from mixing error.
  bool exact_friend_mode = false;
};

struct PollEstimate {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::IntentPolling;
  PollConfig config;
};

// All estimators sample with replacement and throw InvalidArgument for a zero
// budget. The stream overloads let a caller own the random state; the plain
// overloads seed a fresh RandomStream from cfg.seed.

PollEstimate intent_poll(const LabeledGraph& lg, const PollConfig& cfg);
PollEstimate naive_nep(const LabeledGraph& lg, const PollConfig& cfg);
/// Throws Disconnected on a disconnected graph.
PollEstimate rw_nep(const LabeledGraph& lg, const PollConfig& cfg);
PollEstimate fn_nep(const LabeledGraph& lg, const PollConfig& cfg);

double intent_poll(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs);
double naive_nep(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs);
double rw_nep(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs);
double fn_nep(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs);

PollEstimate run_estimator(EstimatorKind kind, const LabeledGraph& lg, const PollConfig& cfg);
double run_estimator(EstimatorKind kind, const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs);

}  // namespace nepoll
