#include "kshare/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kshare/error.hpp"
#include "kshare/svg.hpp"

namespace kshare::cli {

namespace {

const std::vector<std::string> kTopologyNames{"ring", "full", "line"};
const std::vector<std::string> kActivationNames{"relu", "sigmoid", "identity"};

void add_topology_flag(CLI::App& cmd, const std::string& name, std::string& target) {
  cmd.add_option(name, target, "Network topology")->check(CLI::IsMember(kTopologyNames))->capture_default_str();
}

void add_model_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--seed", o.seed, "Seed for weights and fluctuations")->capture_default_str();
  cmd.add_option("--dim", o.dim, "Embedding dimension k")->check(CLI::Range(2, 1024))->capture_default_str();
  cmd.add_option("--rounds", o.rounds, "GraphSAGE rounds L")->check(CLI::Range(1, 1000))->capture_default_str();
  cmd.add_option("--activation", o.activation, "Layer activation")
      ->check(CLI::IsMember(kActivationNames))
      ->capture_default_str();
  cmd.add_option("--fluctuation", o.fluctuation, "Relative metric fluctuation, in [0, 0.1)")
      ->check(CLI::Range(0.0, 0.0999999999))
      ->capture_default_str();
}

// Validation failures of parsed values are usage errors, not runtime errors.
template <typename F>
auto validated(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw CLI::ValidationError(e.what());
  }
}

void print_summary(std::ostream& out, const DriftResult& r) {
  out << "topology=" << to_string(r.config.topology) << " n=" << r.config.nodes << " target=" << r.config.target
      << " min_distance_workload=" << r.metrics.min_distance_workload
      << " left_monotone=" << (r.metrics.left_monotone ? "true" : "false")
      << " right_monotone=" << (r.metrics.right_monotone ? "true" : "false") << '\n';
}

}  // namespace

DriftConfig to_drift_config(const Options& o) {
  DriftConfig config;
  config.topology = parse_topology(o.topology);
  config.nodes = o.nodes;
  config.target = o.target;
  config.baseline_workload = WorkloadPercent(o.baseline);
  config.reseed(o.seed);
  config.embedding.dimension = o.dim;
  config.embedding.rounds = o.rounds;
  config.embedding.activation = parse_activation(o.activation);
  config.sharing.tolerance = o.tolerance;
  config.sharing.max_rounds = o.max_rounds;
  config.sharing.anchor_weight = o.anchor_weight;
  config.fluctuation_magnitude = o.fluctuation;
  config.workers = o.workers;
  config.validate();
  const auto graph = build_topology(config.topology, config.nodes);
  if (!graph.contains(config.target)) throw Error(ErrorCode::UnknownNode, "target " + config.target + " not in graph");
  return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decentralized knowledge-sharing simulator", "kshare"};
  app.require_subcommand(1);

  auto* drift = app.add_subcommand("drift", "Run the semantic-drift experiment for one target node");
  add_topology_flag(*drift, "--topology", o.topology);
  drift->add_option("--nodes", o.nodes, "Number of nodes (>= 3)")->capture_default_str();
  drift->add_option("--target", o.target, "Target node id")->capture_default_str();
  drift->add_option("--baseline", o.baseline, "Baseline workload percent")->capture_default_str();
  add_model_flags(*drift, o);
  drift->add_option("--tolerance", o.tolerance, "Sharing convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  drift->add_option("--max-rounds", o.max_rounds, "Sharing round limit")->check(CLI::Range(1, 100000))->capture_default_str();
  drift->add_option("--anchor-weight", o.anchor_weight, "Weight of a node's local embedding in each sharing round")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  drift->add_option("--workers", o.workers, "Concurrent sweep steps")->check(CLI::Range(1, 256))->capture_default_str();
  drift->add_option("--out", o.out, "Output directory")->capture_default_str();

  auto* topology = app.add_subcommand("topology", "Print a topology as a graph snapshot (JSON)");
  add_topology_flag(*topology, "--kind", o.topology);
  topology->add_option("--nodes", o.nodes, "Number of nodes")->capture_default_str();

  auto* embed = app.add_subcommand("embed", "Embed a topology with GraphSAGE and print per-round embeddings (CSV)");
  add_topology_flag(*embed, "--topology", o.topology);
  embed->add_option("--nodes", o.nodes, "Number of nodes")->capture_default_str();
  embed->add_option("--workload", o.workload, "Workload percent of every node")->capture_default_str();
  add_model_flags(*embed, o);
  embed->add_option("--out", o.embed_out, "Output CSV file (stdout when omitted)");

  auto* plot = app.add_subcommand("plot", "Render a projection CSV as an SVG scatter");
  plot->add_option("--input", o.input, "Projection CSV")->required();
  plot->add_option("--output", o.output, "SVG file to write")->required();

  std::optional<DriftConfig> drift_config;
  std::optional<KnowledgeGraph> graph;
  std::optional<EmbeddingConfig> embed_config;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (drift->parsed()) {
      drift_config = validated([&] { return to_drift_config(o); });
    } else if (topology->parsed()) {
      graph = validated([&] { return build_topology(parse_topology(o.topology), o.nodes); });
    } else if (embed->parsed()) {
      validated([&] {
        graph = build_topology(parse_topology(o.topology), o.nodes);
        WorkloadPercent{o.workload};
        if (!(o.fluctuation >= 0.0 && o.fluctuation < 0.1)) {
          throw Error(ErrorCode::MagnitudeOutOfRange, "fluctuation must lie in [0, 0.1)");
        }
        EmbeddingConfig c;
        c.dimension = o.dim;
        c.rounds = o.rounds;
        c.activation = parse_activation(o.activation);
        c.weight_seed = o.seed;
        c.validate();
        embed_config = c;
        return 0;
      });
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    const CLI::App* active = drift->parsed()      ? drift
                             : topology->parsed() ? topology
                             : embed->parsed()    ? embed
                             : plot->parsed()     ? plot
                                                  : &app;
    err << active->help();
    return kUsageError;
  }

  try {
    if (drift_config) {
      const DriftResult result = run_drift(*drift_config);
      export_result(result, o.out);
      print_summary(out, result);
    } else if (topology->parsed()) {
      out << graph->to_json().dump(2) << '\n';
    } else if (embed->parsed()) {
      const auto model = make_model(*embed_config, kFeatureDimension);
      EmbeddingMap features;
      const NodeFeatures capacity{0.0, kDefaultMemTotalMiB, kDefaultMemTotalMiB};
      for (const auto& id : graph->node_ids()) {
        const auto f = apply_fluctuation(set_workload(capacity, WorkloadPercent(o.workload)), o.seed, id, 0, o.fluctuation);
        features.emplace(id, feature_vector(f));
      }
      const auto history = embed_graph_rounds(*graph, features, model, embed_config->rounds);
      std::vector<EmbeddingSnapshot> snapshots;
      for (std::size_t l = 0; l < history.size(); ++l) snapshots.push_back({l + 1, history[l]});
      if (o.embed_out.empty()) {
        write_embedding_csv(out, snapshots);
      } else {
        std::ofstream file(o.embed_out, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(ErrorCode::IoError, "cannot open " + o.embed_out);
        write_embedding_csv(file, snapshots);
        if (!file.flush()) throw Error(ErrorCode::IoError, "failed writing " + o.embed_out);
      }
    } else if (plot->parsed()) {
      std::ifstream in(o.input, std::ios::binary);
      if (!in) throw Error(ErrorCode::IoError, "cannot open " + o.input);
      const auto projection = read_projection_csv(in);
      std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorCode::IoError, "cannot open " + o.output);
      file << render_scatter_svg(projection);
      if (!file.flush()) throw Error(ErrorCode::IoError, "failed writing " + o.output);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace kshare::cli
