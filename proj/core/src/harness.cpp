#include "nepoll/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "nepoll/error.hpp"
#include "nepoll/io.hpp"
#include "nepoll/netgen.hpp"
#include "nepoll/random.hpp"

namespace nepoll {

namespace {

// Seed path heads for dataset construction; replication seeds use 3-element paths.
constexpr std::uint64_t kGraphStream = 101;
constexpr std::uint64_t kRewireStream = 102;
constexpr std::uint64_t kLabelStream = 103;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

class LineContext {
public:
  LineContext(std::size_t line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(std::string_view what) const {
    throw Error(ErrorCode::Parse,
                "config line " + std::to_string(line_) + ": " + key_ + ": " + std::string(what));
  }

  std::uint64_t unsigned_value(std::string_view text) const {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || text.empty())
      fail("expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
  }

  double real_value(std::string_view text) const {
    text = trim(text);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || text.empty() || !std::isfinite(v))
      fail("expected a number, got '" + std::string(text) + "'");
    return v;
  }

  bool bool_value(std::string_view text) const {
    text = trim(text);
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    fail("expected true or false, got '" + std::string(text) + "'");
  }

  std::vector<std::string> list_value(std::string_view text) const {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
      if (text.back() != ']') fail("unterminated list");
      text = text.substr(1, text.size() - 2);
    }
    std::vector<std::string> items;
    while (!trim(text).empty()) {
      const auto comma = text.find(',');
      const std::string item = unquote(text.substr(0, comma));
      if (item.empty()) fail("empty list item");
      items.push_back(item);
      if (comma == std::string_view::npos) break;
      text = text.substr(comma + 1);
    }
    return items;
  }

private:
  std::size_t line_;
  std::string key_;
};

void apply_entry(ExperimentConfig& cfg, const std::string& key, std::string_view value, const LineContext& ctx) {
  if (key == "graph.path") {
    cfg.graph.path = unquote(value);
  } else if (key == "graph.model") {
    const std::string m = unquote(value);
    if (m == "config" || m == "configuration") cfg.graph.model = GraphModel::Configuration;
    else if (m == "er" || m == "gnp") cfg.graph.model = GraphModel::ErdosRenyi;
    else ctx.fail("unknown model '" + m + "'");
  } else if (key == "graph.n") {
    cfg.graph.node_count = ctx.unsigned_value(value);
  } else if (key == "graph.alpha") {
    cfg.graph.exponent = ctx.real_value(value);
  } else if (key == "graph.kmin") {
    cfg.graph.min_degree = ctx.unsigned_value(value);
  } else if (key == "graph.kmax") {
    cfg.graph.max_degree = ctx.unsigned_value(value);
  } else if (key == "graph.p") {
    cfg.graph.edge_probability = ctx.real_value(value);
  } else if (key == "graph.rkk") {
    cfg.graph.assortativity = ctx.real_value(value);
  } else if (key == "graph.giant") {
    cfg.graph.giant_component = ctx.bool_value(value);
  } else if (key == "labels.path") {
    cfg.labels.path = unquote(value);
  } else if (key == "labels.p") {
    cfg.labels.probability = ctx.real_value(value);
  } else if (key == "labels.rho") {
    cfg.labels.degree_label_corr = ctx.real_value(value);
  } else if (key == "budgets") {
    cfg.budgets.clear();
    for (const auto& item : ctx.list_value(value)) {
      const auto b = ctx.unsigned_value(item);
      if (b == 0) ctx.fail("budgets must be at least 1");
      cfg.budgets.push_back(b);
    }
    if (cfg.budgets.empty()) ctx.fail("budget list is empty");
  } else if (key == "replications") {
    cfg.replications = ctx.unsigned_value(value);
    if (cfg.replications == 0) ctx.fail("replications must be at least 1");
  } else if (key == "estimators") {
    cfg.estimators.clear();
    for (const auto& item : ctx.list_value(value)) {
      const auto kind = parse_estimator_kind(item);
      if (!kind) ctx.fail("unknown estimator '" + item + "'");
      cfg.estimators.push_back(*kind);
    }
    if (cfg.estimators.empty()) ctx.fail("estimator list is empty");
  } else if (key == "walk_length") {
    cfg.walk_length = ctx.unsigned_value(value);
  } else if (key == "lazy_walk") {
    cfg.lazy_walk = ctx.bool_value(value);
  } else if (key == "rw.exact_friend") {
    cfg.rw_exact_friend = ctx.bool_value(value);
  } else if (key == "seed") {
    cfg.seed = ctx.unsigned_value(value);
  } else if (key == "workers") {
    cfg.workers = ctx.unsigned_value(value);
    if (cfg.workers == 0) ctx.fail("workers must be at least 1");
  } else {
    ctx.fail("unknown key");
  }
}

std::optional<double> optional_call(auto&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string_view::npos) {
      if (line.back() != ']')
        throw Error(ErrorCode::Parse, "config line " + std::to_string(line_no) + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::Parse, "config line " + std::to_string(line_no) + ": expected key = value");
    const std::string bare(trim(line.substr(0, eq)));
    if (bare.empty()) throw Error(ErrorCode::Parse, "config line " + std::to_string(line_no) + ": empty key");
    const std::string key = section.empty() ? bare : section + "." + bare;
    apply_entry(cfg, key, line.substr(eq + 1), LineContext(line_no, key));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  ExperimentConfig cfg = parse_config(in);
  // Relative data paths are taken relative to the config file.
  const auto base = path.parent_path();
  if (cfg.graph.path && cfg.graph.path->is_relative()) cfg.graph.path = base / *cfg.graph.path;
  if (cfg.labels.path && cfg.labels.path->is_relative()) cfg.labels.path = base / *cfg.labels.path;
  return cfg;
}

std::vector<std::size_t> default_budgets(std::size_t node_count) {
  const std::size_t top = std::max<std::size_t>(1, (node_count + 99) / 100);
  std::vector<std::size_t> budgets;
  for (std::size_t b = 1; b <= std::min<std::size_t>(50, top); ++b) budgets.push_back(b);
  // Ten points per decade past 50.
  const double step = std::pow(10.0, 0.1);
  double x = 50.0;
  while (budgets.back() < top) {
    x *= step;
    const auto b = std::min(top, std::max(budgets.back() + 1, static_cast<std::size_t>(std::llround(x))));
    budgets.push_back(b);
  }
  return budgets;
}

Dataset load_dataset(const ExperimentConfig& cfg) {
  Dataset out;
  Graph graph = [&] {
    if (cfg.graph.path) {
      LoadedGraph loaded = read_edge_list(*cfg.graph.path);
      out.duplicate_lines = loaded.duplicate_lines;
      if (loaded.duplicate_lines > 0)
        out.warnings.push_back(std::to_string(loaded.duplicate_lines) + " duplicate edge lines dropped");
      return std::move(loaded.graph);
    }
    const std::uint64_t seed = derive_seed(cfg.seed, {kGraphStream});
    if (cfg.graph.model == GraphModel::ErdosRenyi)
      return erdos_renyi({cfg.graph.node_count, cfg.graph.edge_probability, seed});
    GeneratedGraph gen = configuration_model(
        {cfg.graph.node_count, cfg.graph.exponent, cfg.graph.min_degree, cfg.graph.max_degree, seed});
    out.dropped_nodes = gen.dropped_isolated;
    return std::move(gen.graph);
  }();

  if (cfg.graph.giant_component && !graph.flags().connected) {
    const std::size_t before = graph.node_count();
    graph = largest_connected_component(graph);
    out.dropped_nodes += before - graph.node_count();
  }
  if (cfg.graph.assortativity) {
    RandomStream rs(derive_seed(cfg.seed, {kRewireStream}));
    RewireResult rewired = rewire_to_assortativity(graph, {*cfg.graph.assortativity}, rs);
    if (!rewired.reached) out.warnings.push_back("assortativity target not reached");
    graph = std::move(rewired.graph);
    if (cfg.graph.giant_component && !graph.flags().connected) {
      const std::size_t before = graph.node_count();
      graph = largest_connected_component(graph);
      out.dropped_nodes += before - graph.node_count();
      out.warnings.push_back("rewiring split the graph; kept the largest component");
    }
    out.achieved_assortativity = assortativity(graph);
  }
  if (!graph.flags().connected) out.warnings.push_back("graph is disconnected");
  if (graph.flags().bipartite) out.warnings.push_back("graph is bipartite; random walks do not mix");

  auto shared = std::make_shared<const Graph>(std::move(graph));
  if (cfg.labels.path) {
    LabelData labels = read_labels(*cfg.labels.path, *shared);
    out.missing_labels = labels.missing;
    out.unknown_labels = labels.unknown;
    if (labels.missing > 0)
      out.warnings.push_back(std::to_string(labels.missing) + " nodes missing from the label file set to 0");
    if (labels.unknown > 0)
      out.warnings.push_back(std::to_string(labels.unknown) + " label lines name unknown nodes");
    out.labeled.emplace(shared, std::move(labels.labels));
  } else {
    RandomStream rs(derive_seed(cfg.seed, {kLabelStream}));
    if (cfg.labels.degree_label_corr) {
      LabelResult lr = assign_labels(shared, {cfg.labels.probability, *cfg.labels.degree_label_corr}, rs);
      out.achieved_degree_label_corr = lr.achieved;
      if (!lr.reached) out.warnings.push_back("degree-label correlation target not reached");
      out.labeled.emplace(std::move(lr.labeled));
    } else {
      if (!(cfg.labels.probability >= 0.0 && cfg.labels.probability <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "labels.p must lie in [0, 1]");
      out.labeled.emplace(shared, bernoulli_labels(shared->node_count(), cfg.labels.probability, rs));
    }
  }
  return out;
}

std::uint64_t replication_seed(std::uint64_t master, EstimatorKind kind, std::size_t budget,
                               std::size_t replication) noexcept {
  return derive_seed(master, {static_cast<std::uint64_t>(kind) + 1, budget, replication});
}

std::vector<double> run_replications(const LabeledGraph& lg, EstimatorKind kind, const PollConfig& base,
                                     std::uint64_t master_seed, std::size_t replications,
                                     std::size_t workers) {
  std::vector<double> values(replications);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::size_t r = next++; r < replications; r = next++) {
        PollConfig cfg = base;
        cfg.seed = replication_seed(master_seed, kind, base.budget, r);
        RandomStream rs(cfg.seed);
        values[r] = run_estimator(kind, lg, cfg, rs);
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = replications;
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(replications, 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, const LabeledGraph& lg) {
  if (cfg.replications == 0) throw Error(ErrorCode::InvalidArgument, "replications must be at least 1");
  if (cfg.estimators.empty()) throw Error(ErrorCode::InvalidArgument, "no estimators selected");
  const std::vector<std::size_t> budgets =
      cfg.budgets.empty() ? default_budgets(lg.graph().node_count()) : cfg.budgets;
  for (auto b : budgets)
    if (b == 0) throw Error(ErrorCode::InvalidArgument, "budgets must be at least 1");
  for (auto kind : cfg.estimators) {
    if (kind == EstimatorKind::RandomWalkNep && !cfg.rw_exact_friend && !lg.graph().flags().connected)
      throw Error(ErrorCode::Disconnected, "random-walk polling requires a connected graph");
  }

  const double fbar = true_fraction(lg);
  std::vector<SweepRow> rows;
  for (auto kind : cfg.estimators) {
    // Stationary formulas are exact for RW only when samples are drawn from the stationary law.
    const bool has_exact = kind != EstimatorKind::RandomWalkNep || cfg.rw_exact_friend;
    for (auto b : budgets) {
      PollConfig poll;
      poll.budget = b;
      poll.walk_length = cfg.walk_length;
      poll.lazy_walk = cfg.lazy_walk;
      poll.exact_friend_mode = cfg.rw_exact_friend;
      const auto values = run_replications(lg, kind, poll, cfg.seed, cfg.replications, cfg.workers);

      const double count = static_cast<double>(values.size());
      double sum = 0.0;
      for (double v : values) sum += v;
      const double mean = sum / count;
      double var = 0.0, mse = 0.0;
      for (double v : values) {
        var += (v - mean) * (v - mean);
        mse += (v - fbar) * (v - fbar);
      }

      SweepRow row{kind, b, mean - fbar, var / count, mse / count, {}, {}, {}};
      if (has_exact) {
        const ErrorReport exact = exact_error(kind, lg, b);
        row.exact_bias = exact.bias;
        row.exact_variance = exact.variance_at_budget;
        row.exact_mse = exact.mse_at_budget;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  const Dataset data = load_dataset(cfg);
  return run_sweep(cfg, *data.labeled);
}

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << to_string(r.kind) << ',' << r.budget << ',' << format_double(r.empirical_bias) << ','
        << format_double(r.empirical_variance) << ',' << format_double(r.empirical_mse) << ','
        << opt(r.exact_bias) << ',' << opt(r.exact_variance) << ',' << opt(r.exact_mse) << '\n';
  }
}

Report run_report(const LabeledGraph& lg, std::size_t spectral_cap) {
  const Graph& g = lg.graph();
  Report r;
  r.node_count = g.node_count();
  r.edge_count = g.edge_count();
  r.min_degree = g.min_degree();
  r.flags = g.flags();
  r.paradox = friendship_paradox_check(g);
  r.fosd_holds = fosd_check(g).holds;
  r.true_fraction = true_fraction(lg);
  r.assortativity = optional_call([&] { return assortativity(g); });
  r.degree_label_corr = optional_call([&] { return degree_label_correlation(lg); });
  if (g.node_count() <= spectral_cap) r.spectrum = spectral_summary(g, spectral_cap);
  if (r.flags.connected && r.spectrum) r.threshold = budget_threshold(lg, r.spectrum->lambda2);

  const SpectralSummary* spectrum = r.spectrum ? &*r.spectrum : nullptr;
  for (auto kind : kAllEstimators) {
    if (kind == EstimatorKind::RandomWalkNep && !r.flags.connected) continue;
    r.single_sample.push_back(exact_error(kind, lg, 1, spectrum));
  }
  return r;
}

void write_report(std::ostream& out, const Report& r) {
  auto line = [&](std::string_view key, const std::string& value) { out << key << ',' << value << '\n'; };
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string("undefined"); };
  line("n", std::to_string(r.node_count));
  line("edges", std::to_string(r.edge_count));
  line("d_min", std::to_string(r.min_degree));
  line("connected", r.flags.connected ? "true" : "false");
  line("bipartite", r.flags.bipartite ? "true" : "false");
  line("rw_applicable", r.flags.connected ? "true" : "false");
  line("true_fraction", format_double(r.true_fraction));
  line("mean_degree_node", format_double(r.paradox.mean_degree_node));
  line("mean_degree_friend", format_double(r.paradox.mean_degree_friend));
  line("mean_degree_friend_of_node", format_double(r.paradox.mean_degree_friend_of_node));
  line("friendship_paradox", r.paradox.holds ? "true" : "false");
  line("fosd", r.fosd_holds ? "true" : "false");
  line("r_kk", opt(r.assortativity));
  line("rho_kf", opt(r.degree_label_corr));
  if (r.spectrum) {
    line("lambda2", format_double(r.spectrum->lambda2));
    line("lambda_n", format_double(r.spectrum->lambda_n));
  } else {
    line("lambda2", "skipped");
    line("lambda_n", "skipped");
  }
  if (r.threshold) {
    switch (r.threshold->kind) {
      case BudgetThreshold::Kind::Infinite: line("threshold", "Infinite"); break;
      case BudgetThreshold::Kind::NonPositive:
        line("threshold", "NonPositive(" + format_double(r.threshold->value) + ")");
        break;
      case BudgetThreshold::Kind::Finite: line("threshold", format_double(r.threshold->value)); break;
    }
  }
  for (const ErrorReport& e : r.single_sample) {
    const std::string k(to_string(e.kind));
    line(k + ".bias", format_double(e.bias));
    line(k + ".var", format_double(e.variance_single_sample));
    if (e.variance_upper_bound) line(k + ".var_bound", format_double(*e.variance_upper_bound));
    if (e.bias_squared_upper_bound) line(k + ".bias_bound", format_double(*e.bias_squared_upper_bound));
  }
}

std::vector<InvariantResult> check_invariants(const LabeledGraph& lg, std::size_t spectral_cap) {
  const Graph& g = lg.graph();
  std::vector<InvariantResult> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  // Absolute slack for comparisons between quantities of order one.
  constexpr double kSlack = 1e-12;
  constexpr double kOracleTolerance = 1e-10;

  const ParadoxCheck paradox = friendship_paradox_check(g);
  add("friendship_paradox", paradox.holds,
      format_double(paradox.mean_degree_node) + " <= " + format_double(paradox.mean_degree_friend) + ", " +
          format_double(paradox.mean_degree_friend_of_node));
  add("fosd", fosd_check(g).holds);

  const LabelDegreeSummary s = label_degree_summary(lg);
  const double lhs = s.label_degree_cov / s.mean_degree;
  const double rhs = s.friend_label_mean - s.true_fraction;
  add("rw_bias_identity", std::abs(lhs - rhs) <= kSlack, format_double(lhs) + " vs " + format_double(rhs));

  const ErrorReport un = exact_error_un(lg, 1);
  const ErrorReport fn = exact_error_fn(lg, 1);
  const ErrorReport rw = exact_error_rw(lg, 1);
  const double fn_alt = fn_bias_normalized_form(lg);
  add("fn_bias_forms", std::abs(fn.bias - fn_alt) <= kOracleTolerance,
      format_double(fn.bias) + " vs " + format_double(fn_alt));

  const double un_bound = s.friend_label_mean * s.mean_degree / static_cast<double>(g.min_degree());
  add("un_variance_bound", un.variance_single_sample <= un_bound + kSlack,
      format_double(un.variance_single_sample) + " <= " + format_double(un_bound));

  if (g.node_count() <= spectral_cap) {
    const SpectralSummary spec = spectral_summary(g, spectral_cap);
    const double rw_bound = spec.lambda2 * spec.lambda2 * s.friend_label_mean;
    add("rw_variance_bound", rw.variance_single_sample <= rw_bound + kSlack,
        format_double(rw.variance_single_sample) + " <= " + format_double(rw_bound));
    add("bound_ordering", rw_bound <= un_bound + kSlack, format_double(rw_bound) + " <= " + format_double(un_bound));
    const double fn_bound = *exact_error_fn(lg, 1, spec).bias_squared_upper_bound;
    add("fn_bias_bound", fn.bias * fn.bias <= fn_bound + kSlack,
        format_double(fn.bias * fn.bias) + " <= " + format_double(fn_bound));
  }

  const std::pair<SamplingLaw, const ErrorReport*> laws[] = {
      {SamplingLaw::NaiveNep, &un}, {SamplingLaw::RandomWalkStationary, &rw}, {SamplingLaw::FriendOfNode, &fn}};
  const double fbar = s.true_fraction;
  for (const auto& [law, report] : laws) {
    const Moments m = brute_force_estimator_law(lg, law);
    const double bias_gap = std::abs(m.mean - fbar - report->bias);
    const double var_gap = std::abs(m.variance - report->variance_single_sample);
    add(std::string("oracle_") + std::string(to_string(report->kind)),
        bias_gap <= kOracleTolerance && var_gap <= kOracleTolerance,
        "bias gap " + format_double(bias_gap) + ", variance gap " + format_double(var_gap));
  }
  return out;
}

}  // namespace nepoll
