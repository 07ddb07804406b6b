#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "nepoll/error.hpp"
#include "nepoll/harness.hpp"
#include "nepoll/io.hpp"

namespace nepoll {

namespace {

struct GraphInput {
  std::string graph_path;
  std::string labels_path;
  bool giant = false;
  std::size_t spectral_cap = kDefaultSpectralSizeCap;
};

void add_graph_input(CLI::App& cmd, GraphInput& in) {
  cmd.add_option("--graph", in.graph_path, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd.add_option("--labels", in.labels_path, "Label file (missing nodes get 0)")->check(CLI::ExistingFile);
  cmd.add_flag("--giant", in.giant, "Restrict to the largest connected component");
  cmd.add_option("--spectral-cap", in.spectral_cap, "Skip the eigensolve above this many nodes");
}

LabeledGraph load_input(const GraphInput& in, std::ostream& err) {
  LoadedGraph loaded = read_edge_list(in.graph_path);
  if (loaded.duplicate_lines > 0) err << "warning: " << loaded.duplicate_lines << " duplicate edge lines dropped\n";
  Graph g = std::move(loaded.graph);
  if (in.giant && !g.flags().connected) g = largest_connected_component(g);
  auto shared = std::make_shared<const Graph>(std::move(g));
  if (in.labels_path.empty()) {
    err << "warning: no label file, all labels 0\n";
    return LabeledGraph(shared, std::vector<std::uint8_t>(shared->node_count(), 0));
  }
  LabelData labels = read_labels(in.labels_path, *shared);
  if (labels.missing > 0) err << "warning: " << labels.missing << " nodes missing from the label file set to 0\n";
  if (labels.unknown > 0) err << "warning: " << labels.unknown << " label lines name unknown nodes\n";
  return LabeledGraph(shared, std::move(labels.labels));
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighborhood expectation polling toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::size_t> workers, replications;
  std::optional<std::uint64_t> seed_override;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo MSE sweep from a config file, written as CSV");
  sweep->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "CSV output path (default: standard output)");
  sweep->add_option("--workers", workers, "Worker threads");
  sweep->add_option("--replications", replications, "Override replications");
  sweep->add_option("--seed", seed_override, "Override the master seed");

  GraphInput report_in;
  auto* report = app.add_subcommand("report", "Summary statistics of a labeled graph");
  add_graph_input(*report, report_in);

  GraphInput check_in;
  auto* check = app.add_subcommand("check", "Run the invariant suite on a labeled graph");
  add_graph_input(*check, check_in);

  ExperimentConfig gen_cfg;
  std::string model = "config", prefix = "graph";
  auto* generate = app.add_subcommand("generate", "Generate a graph and labels, write edge-list and label files");
  generate->add_option("--model", model, "config or er")->check(CLI::IsMember({"config", "er"}));
  generate->add_option("--n", gen_cfg.graph.node_count, "Number of nodes")->required();
  generate->add_option("--alpha", gen_cfg.graph.exponent, "Power-law exponent");
  generate->add_option("--kmin", gen_cfg.graph.min_degree, "Minimum degree");
  generate->add_option("--kmax", gen_cfg.graph.max_degree, "Maximum degree (default floor(sqrt(n)))");
  generate->add_option("--p", gen_cfg.graph.edge_probability, "Edge probability for er");
  generate->add_option("--rkk", gen_cfg.graph.assortativity, "Target assortativity");
  generate->add_option("--rho", gen_cfg.labels.degree_label_corr, "Target degree-label correlation");
  generate->add_option("--label-p", gen_cfg.labels.probability, "Fraction of 1-labels in the initial draw");
  generate->add_option("--seed", gen_cfg.seed, "Master seed");
  generate->add_flag("!--keep-all", gen_cfg.graph.giant_component, "Keep every component instead of the giant one");
  generate->add_option("--out", prefix, "Output prefix; writes <prefix>.edges and <prefix>.labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: Usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sweep) {
      ExperimentConfig cfg = load_config(config_path);
      if (workers) cfg.workers = std::max<std::size_t>(1, *workers);
      if (replications) cfg.replications = *replications;
      if (seed_override) cfg.seed = *seed_override;
      const Dataset data = load_dataset(cfg);
      for (const auto& w : data.warnings) err << "warning: " << w << '\n';
      const auto rows = run_sweep(cfg, *data.labeled);
      if (out_path.empty()) {
        write_sweep_csv(out, rows);
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw Error(ErrorCode::Io, "cannot write " + out_path);
        write_sweep_csv(file, rows);
        if (!file) throw Error(ErrorCode::Io, "write failed for " + out_path);
      }
    } else if (*report) {
      const LabeledGraph lg = load_input(report_in, err);
      write_report(out, run_report(lg, report_in.spectral_cap));
    } else if (*check) {
      const LabeledGraph lg = load_input(check_in, err);
      std::string failed;
      for (const auto& r : check_invariants(lg, check_in.spectral_cap)) {
        out << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ',' << r.detail << '\n';
        if (!r.passed) failed += (failed.empty() ? "" : " ") + r.name;
      }
      if (!failed.empty()) {
        err << "error: InvariantViolated: " << failed << '\n';
        return 1;
      }
    } else if (*generate) {
      gen_cfg.graph.model = model == "er" ? GraphModel::ErdosRenyi : GraphModel::Configuration;
      const Dataset data = load_dataset(gen_cfg);
      for (const auto& w : data.warnings) err << "warning: " << w << '\n';
      const LabeledGraph& lg = *data.labeled;
      write_edge_list(prefix + ".edges", lg.graph());
      write_labels(prefix + ".labels", lg);
      out << "nodes," << lg.graph().node_count() << '\n';
      out << "edges," << lg.graph().edge_count() << '\n';
      out << "dropped_nodes," << data.dropped_nodes << '\n';
      out << "true_fraction," << format_double(true_fraction(lg)) << '\n';
      if (data.achieved_assortativity) out << "r_kk," << format_double(*data.achieved_assortativity) << '\n';
      if (data.achieved_degree_label_corr)
        out << "rho_kf," << format_double(*data.achieved_degree_label_corr) << '\n';
      out << "edges_file," << prefix << ".edges\n";
      out << "labels_file," << prefix << ".labels\n";
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace nepoll
