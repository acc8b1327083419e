#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kshare/embedding.hpp"
#include "kshare/features.hpp"
#include "kshare/graph.hpp"
#include "kshare/pca.hpp"
#include "kshare/sharing.hpp"

namespace kshare {

inline constexpr int kDefaultBaselineWorkload = 50;
inline constexpr RngSeed kDefaultSeed = 42;
inline constexpr std::size_t kDefaultNodes = 10;
inline constexpr std::string_view kDefaultTarget = "node-0";
inline constexpr double kMonotoneTolerance = 1e-9;

struct DriftConfig {
  TopologyKind topology = TopologyKind::FullyConnected;
  std::size_t nodes = kDefaultNodes;
  NodeId target{kDefaultTarget};
  WorkloadPercent baseline_workload{kDefaultBaselineWorkload};
  std::vector<WorkloadPercent> sweep = default_sweep();
  RngSeed seed = kDefaultSeed;
  EmbeddingConfig embedding{};
  SharingConfig sharing{};
  double fluctuation_magnitude = kDefaultFluctuation;
  double mem_total = kDefaultMemTotalMiB;
  // Sweep steps evaluated concurrently; output is identical for any value.
  std::size_t workers = 1;

  /// Sets both the fluctuation seed and the weight seed.
  void reseed(RngSeed s) {
    seed = s;
    embedding.weight_seed = s;
  }

  void validate() const;
};

struct TrajectoryMetrics {
  std::vector<double> centroid_distance;
  int min_distance_workload = 0;
  bool left_monotone = true;
  bool right_monotone = true;
};

struct DriftStep {
  WorkloadPercent workload;
  KnowledgeMap map;
};

struct DriftResult {
  DriftConfig config;
  KnowledgeMap baseline_map;
  std::vector<DriftStep> steps;
  Projection2D projection;
  TrajectoryMetrics metrics;
  std::vector<FluctuationSample> trace;
};

Vector centroid(const EmbeddingMap& embeddings);

/// Distance of each target embedding to the centroid of the baseline map.
std::vector<double> centroid_distances(const KnowledgeMap& baseline, const std::vector<Embedding>& target_embeddings);

/// Mean distance of baseline embeddings to their own centroid.
double cluster_spread(const KnowledgeMap& baseline);

/// Argmin (ties to the lower workload) plus monotonicity on each side of it.
/// Requires at least 3 steps.
TrajectoryMetrics trajectory_metrics(const std::vector<WorkloadPercent>& sweep, const std::vector<double>& distances);

DriftResult run_drift(const DriftConfig& config);

/// Metrics file content; round-trips through JSON.
struct MetricsReport {
  std::string topology;
  std::size_t n = 0;
  std::string target;
  std::vector<int> sweep;
  std::vector<double> centroid_distance;
  int min_distance_workload = 0;
  bool left_monotone = true;
  bool right_monotone = true;
  std::vector<std::size_t> rounds_used;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport make_report(const DriftResult& result);
nlohmann::json to_json(const MetricsReport& report);
/// Throws InvalidConfig on a schema violation.
MetricsReport report_from_json(const nlohmann::json& j);

/// Writes projection.csv, embeddings_baseline.csv, embeddings_wNNN.csv,
/// knowledge_map_baseline.json, metrics.json, fluctuation_trace.csv and drift.svg.
std::vector<std::filesystem::path> export_result(const DriftResult& result, const std::filesystem::path& directory);

}  // namespace kshare
