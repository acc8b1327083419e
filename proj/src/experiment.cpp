#include "kshare/experiment.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <future>
#include <memory>

#include "kshare/error.hpp"
#include "kshare/svg.hpp"

namespace kshare {

namespace {

constexpr std::string_view kBaselinePrefix = "baseline/";
constexpr std::string_view kTrajectoryPrefix = "trajectory/";

struct StepInput {
  EmbeddingMap features;
  std::vector<FluctuationSample> trace;
};

// Step 0 is the baseline; sweep entry i uses step i + 1.
StepInput make_step_features(const DriftConfig& config, const KnowledgeGraph& kg, std::uint64_t step,
                             std::optional<WorkloadPercent> target_workload) {
  StepInput input;
  const NodeFeatures capacity{0.0, config.mem_total, config.mem_total};
  for (const auto& id : kg.node_ids()) {
    const WorkloadPercent w = (target_workload && id == config.target) ? *target_workload : config.baseline_workload;
    const NodeFeatures f = apply_fluctuation(set_workload(capacity, w), config.seed, id, step, config.fluctuation_magnitude);
    input.features.emplace(id, feature_vector(f));
    input.trace.push_back({step, id, f});
  }
  return input;
}

TrajectoryMetrics summarize(const std::vector<WorkloadPercent>& sweep, const std::vector<double>& distances) {
  if (distances.size() != sweep.size() || sweep.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "one distance per sweep step is required");
  }
  TrajectoryMetrics m;
  m.centroid_distance = distances;
  std::size_t best = 0;
  for (std::size_t i = 1; i < distances.size(); ++i)
    if (distances[i] < distances[best]) best = i;
  m.min_distance_workload = sweep[best].value();
  for (std::size_t i = 0; i < best; ++i)
    if (distances[i + 1] > distances[i] + kMonotoneTolerance) m.left_monotone = false;
  for (std::size_t i = best; i + 1 < distances.size(); ++i)
    if (distances[i + 1] < distances[i] - kMonotoneTolerance) m.right_monotone = false;
  return m;
}

std::string step_file_name(int workload) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "embeddings_w%03d.csv", workload);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace

void DriftConfig::validate() const {
  if (nodes < 3) {
    throw Error(ErrorCode::InvalidSize, "drift experiments need at least 3 nodes, got " + std::to_string(nodes));
  }
  if (sweep.empty()) throw Error(ErrorCode::InvalidConfig, "sweep must not be empty");
  for (std::size_t i = 1; i < sweep.size(); ++i)
    if (!(sweep[i - 1] < sweep[i])) throw Error(ErrorCode::InvalidConfig, "sweep must be strictly increasing");
  if (!(fluctuation_magnitude >= 0.0 && fluctuation_magnitude < 0.1)) {
    throw Error(ErrorCode::MagnitudeOutOfRange, "fluctuation magnitude must lie in [0, 0.1)");
  }
  if (!(mem_total > 0.0)) throw Error(ErrorCode::InvalidConfig, "mem_total must be positive");
  if (workers < 1) throw Error(ErrorCode::InvalidConfig, "workers must be >= 1");
  embedding.validate();
  sharing.validate();
  // Target membership depends on the built graph; checked in run_drift.
}

Vector centroid(const EmbeddingMap& embeddings) {
  if (embeddings.empty()) throw Error(ErrorCode::EmptyInput, "centroid of an empty map");
  Vector c(embeddings.begin()->second.size(), 0.0);
  for (const auto& [_, e] : embeddings) {
    if (e.size() != c.size()) throw Error(ErrorCode::DimensionMismatch, "embeddings differ in dimension");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += e[i];
  }
  for (auto& x : c) x /= static_cast<double>(embeddings.size());
  return c;
}

std::vector<double> centroid_distances(const KnowledgeMap& baseline, const std::vector<Embedding>& target_embeddings) {
  const Vector c = centroid(baseline.entries);
  std::vector<double> out;
  out.reserve(target_embeddings.size());
  for (const auto& e : target_embeddings) out.push_back(l2_distance(e, c));
  return out;
}

double cluster_spread(const KnowledgeMap& baseline) {
  const Vector c = centroid(baseline.entries);
  double total = 0.0;
  for (const auto& [_, e] : baseline.entries) total += l2_distance(e, c);
  return total / static_cast<double>(baseline.entries.size());
}

TrajectoryMetrics trajectory_metrics(const std::vector<WorkloadPercent>& sweep, const std::vector<double>& distances) {
  if (sweep.size() < 3) throw Error(ErrorCode::TooFewSteps, "trajectory metrics need at least 3 steps");
  return summarize(sweep, distances);
}

DriftResult run_drift(const DriftConfig& config) {
  config.validate();
  auto graph = std::make_shared<const KnowledgeGraph>(build_topology(config.topology, config.nodes));
  if (!graph->contains(config.target)) throw Error(ErrorCode::UnknownNode, "target " + config.target);

  const EmbeddingModel model = make_model(config.embedding, kFeatureDimension);

  DriftResult result;
  result.config = config;

  auto run_step = [&](std::uint64_t step, std::optional<WorkloadPercent> w) {
    StepInput input = make_step_features(config, *graph, step, w);
    const SharingState state = initial_state(graph, input.features, model, config.embedding.rounds);
    return std::pair{run_sharing(state, model.hidden, config.sharing), std::move(input.trace)};
  };

  {
    auto [map, trace] = run_step(0, std::nullopt);
    result.baseline_map = std::move(map);
    result.trace = std::move(trace);
  }

  const std::size_t count = config.sweep.size();
  std::vector<std::pair<KnowledgeMap, std::vector<FluctuationSample>>> outcomes(count);
  if (config.workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) outcomes[i] = run_step(i + 1, config.sweep[i]);
  } else {
    for (std::size_t begin = 0; begin < count; begin += config.workers) {
      const std::size_t end = std::min(count, begin + config.workers);
      std::vector<std::future<std::pair<KnowledgeMap, std::vector<FluctuationSample>>>> batch;
      for (std::size_t i = begin; i < end; ++i) {
        batch.push_back(std::async(std::launch::async, run_step, i + 1, config.sweep[i]));
      }
      for (std::size_t i = begin; i < end; ++i) outcomes[i] = batch[i - begin].get();
    }
  }

  std::vector<Embedding> trajectory;
  for (std::size_t i = 0; i < count; ++i) {
    auto& [map, trace] = outcomes[i];
    trajectory.push_back(map.entries.at(config.target));
    result.trace.insert(result.trace.end(), trace.begin(), trace.end());
    result.steps.push_back({config.sweep[i], std::move(map)});
  }

  std::vector<Vector> rows;
  for (const auto& [id, e] : result.baseline_map.entries) {
    rows.push_back(e);
    result.projection.points.push_back(
        {std::string(kBaselinePrefix) + id, config.baseline_workload.value(), 0.0, 0.0});
  }
  for (std::size_t i = 0; i < count; ++i) {
    rows.push_back(trajectory[i]);
    result.projection.points.push_back(
        {std::string(kTrajectoryPrefix) + config.target, config.sweep[i].value(), 0.0, 0.0});
  }
  const Matrix matrix = rows_to_matrix(rows);
  try {
    const PcaModel pca = fit_pca(matrix);
    const auto points = project(pca, matrix);
    for (std::size_t i = 0; i < points.size(); ++i) {
      result.projection.points[i].x = points[i].x;
      result.projection.points[i].y = points[i].y;
    }
  } catch (const Error& e) {
    // A cloud of identical points has no principal axes; every point sits at the origin.
    if (e.code() != ErrorCode::DegenerateInput) throw;
  }

  result.metrics = summarize(config.sweep, centroid_distances(result.baseline_map, trajectory));
  return result;
}

MetricsReport make_report(const DriftResult& result) {
  MetricsReport r;
  r.topology = std::string(to_string(result.config.topology));
  r.n = result.config.nodes;
  r.target = result.config.target;
  for (const auto& w : result.config.sweep) r.sweep.push_back(w.value());
  r.centroid_distance = result.metrics.centroid_distance;
  r.min_distance_workload = result.metrics.min_distance_workload;
  r.left_monotone = result.metrics.left_monotone;
  r.right_monotone = result.metrics.right_monotone;
  for (const auto& s : result.steps) r.rounds_used.push_back(s.map.rounds_used);
  return r;
}

nlohmann::json to_json(const MetricsReport& r) {
  return {{"topology", r.topology},
          {"n", r.n},
          {"target", r.target},
          {"sweep", r.sweep},
          {"centroid_distance", r.centroid_distance},
          {"min_distance_workload", r.min_distance_workload},
          {"left_monotone", r.left_monotone},
          {"right_monotone", r.right_monotone},
          {"rounds_used", r.rounds_used}};
}

MetricsReport report_from_json(const nlohmann::json& j) {
  static constexpr std::array kKeys{"topology",          "n",
                                    "target",            "sweep",
                                    "centroid_distance", "min_distance_workload",
                                    "left_monotone",     "right_monotone",
                                    "rounds_used"};
  if (!j.is_object() || j.size() != kKeys.size()) {
    throw Error(ErrorCode::InvalidConfig, "metrics JSON must be an object with exactly the documented keys");
  }
  try {
    for (const char* key : kKeys)
      if (!j.contains(key)) throw Error(ErrorCode::InvalidConfig, std::string("metrics JSON lacks key ") + key);
    MetricsReport r;
    r.topology = j.at("topology").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.target = j.at("target").get<std::string>();
    r.sweep = j.at("sweep").get<std::vector<int>>();
    r.centroid_distance = j.at("centroid_distance").get<std::vector<double>>();
    r.min_distance_workload = j.at("min_distance_workload").get<int>();
    r.left_monotone = j.at("left_monotone").get<bool>();
    r.right_monotone = j.at("right_monotone").get<bool>();
    r.rounds_used = j.at("rounds_used").get<std::vector<std::size_t>>();
    if (r.centroid_distance.size() != r.sweep.size() || r.rounds_used.size() != r.sweep.size()) {
      throw Error(ErrorCode::InvalidConfig, "metrics JSON arrays must match the sweep length");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("metrics JSON type error: ") + e.what());
  }
}

std::vector<std::filesystem::path> export_result(const DriftResult& result, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + directory.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    const auto path = directory / name;
    auto out = open_output(path);
    writer(out);
    finish(out, path);
    written.push_back(path);
  };

  emit("projection.csv", [&](std::ostream& out) { write_projection_csv(out, result.projection); });
  emit("embeddings_baseline.csv", [&](std::ostream& out) {
    const EmbeddingSnapshot snap{result.baseline_map.rounds_used, result.baseline_map.entries};
    write_embedding_csv(out, std::span(&snap, 1));
  });
  for (const auto& step : result.steps) {
    emit(step_file_name(step.workload.value()), [&](std::ostream& out) {
      const EmbeddingSnapshot snap{step.map.rounds_used, step.map.entries};
      write_embedding_csv(out, std::span(&snap, 1));
    });
  }
  emit("knowledge_map_baseline.json",
       [&](std::ostream& out) { out << result.baseline_map.to_json().dump(2) << '\n'; });
  emit("metrics.json", [&](std::ostream& out) { out << to_json(make_report(result)).dump(2) << '\n'; });
  emit("fluctuation_trace.csv", [&](std::ostream& out) { write_fluctuation_csv(out, result.trace); });
  emit("drift.svg", [&](std::ostream& out) {
    const std::string title = std::string(to_string(result.config.topology)) + ", " +
                              std::to_string(result.config.nodes) + " nodes, target " + result.config.target;
    out << render_scatter_svg(result.projection, title);
  });
  return written;
}

}  // namespace kshare
