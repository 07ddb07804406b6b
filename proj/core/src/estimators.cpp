#include "nepoll/estimators.hpp"

#include "nepoll/error.hpp"
#include "nepoll/sampling.hpp"

namespace nepoll {

namespace {

void require_budget(const PollConfig& cfg) {
  if (cfg.budget == 0) throw Error(ErrorCode::InvalidArgument, "sampling budget must be at least 1");
}

template <typename Draw>
double mean_of(std::size_t count, Draw&& draw) {
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += draw();
  return sum / static_cast<double>(count);
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::IntentPolling: return "IP";
    case EstimatorKind::NaiveNep: return "UN";
    case EstimatorKind::RandomWalkNep: return "RW";
    case EstimatorKind::FriendOfNodeNep: return "FN";
  }
  return "?";
}

std::optional<EstimatorKind> parse_estimator_kind(std::string_view text) {
  for (EstimatorKind k : kAllEstimators) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

double intent_poll(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs) {
  require_budget(cfg);
  const Graph& g = lg.graph();
  return mean_of(cfg.budget, [&] { return static_cast<double>(lg.label(sample_random_node(g, rs))); });
}

double naive_nep(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs) {
  require_budget(cfg);
  const Graph& g = lg.graph();
  return mean_of(cfg.budget, [&] { return nep_response(lg, sample_random_node(g, rs)); });
}

double rw_nep(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs) {
  require_budget(cfg);
  const Graph& g = lg.graph();
  if (cfg.exact_friend_mode)
    return mean_of(cfg.budget, [&] { return nep_response(lg, sample_random_friend(g, rs)); });

  if (!g.flags().connected)
    throw Error(ErrorCode::Disconnected, "random-walk polling requires a connected graph");
  const WalkConfig walk{cfg.walk_length.value_or(default_walk_length(g.node_count())), 1, cfg.lazy_walk};
  return mean_of(cfg.budget, [&] {
    const NodeId start = sample_random_node(g, rs);
    return nep_response(lg, random_walk_endpoint(g, start, walk, rs));
  });
}

double fn_nep(const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs) {
  require_budget(cfg);
  const Graph& g = lg.graph();
  return mean_of(cfg.budget, [&] { return nep_response(lg, sample_friend_of_random_node(g, rs)); });
}

double run_estimator(EstimatorKind kind, const LabeledGraph& lg, const PollConfig& cfg, RandomStream& rs) {
  switch (kind) {
    case EstimatorKind::IntentPolling: return intent_poll(lg, cfg, rs);
    case EstimatorKind::NaiveNep: return naive_nep(lg, cfg, rs);
    case EstimatorKind::RandomWalkNep: return rw_nep(lg, cfg, rs);
    case EstimatorKind::FriendOfNodeNep: return fn_nep(lg, cfg, rs);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown estimator kind");
}

PollEstimate run_estimator(EstimatorKind kind, const LabeledGraph& lg, const PollConfig& cfg) {
  RandomStream rs(cfg.seed);
  return {run_estimator(kind, lg, cfg, rs), kind, cfg};
}

PollEstimate intent_poll(const LabeledGraph& lg, const PollConfig& cfg) {
  return run_estimator(EstimatorKind::IntentPolling, lg, cfg);
}
PollEstimate naive_nep(const LabeledGraph& lg, const PollConfig& cfg) {
  return run_estimator(EstimatorKind::NaiveNep, lg, cfg);
}
PollEstimate rw_nep(const LabeledGraph& lg, const PollConfig& cfg) {
  return run_estimator(EstimatorKind::RandomWalkNep, lg, cfg);
}
PollEstimate fn_nep(const LabeledGraph& lg, const PollConfig& cfg) {
  return run_estimator(EstimatorKind::FriendOfNodeNep, lg, cfg);
}

}  // namespace nepoll
