#pragma once

#include <cstddef>
#include <map>
#include <memory>

#include <json.hpp>

#include "kshare/embedding.hpp"
#include "kshare/graph.hpp"

namespace kshare {

inline constexpr std::size_t kDefaultMaxRounds = 50;
inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr double kDefaultAnchorWeight = 0.5;

struct SharingConfig {
  std::size_t max_rounds = kDefaultMaxRounds;
  double tolerance = kDefaultTolerance;
  // Weight of a node's own local embedding in every round's aggregate.
  // 0 reduces a round to the plain mean-aggregator update.
  double anchor_weight = kDefaultAnchorWeight;

  void validate() const;
};

/// Network-wide state between sharing rounds. `anchors` are the embeddings
/// each node derives from its own metrics alone; `embeddings` are the values
/// exchanged with neighbours.
struct SharingState {
  std::shared_ptr<const KnowledgeGraph> graph;
  EmbeddingMap embeddings;
  EmbeddingMap anchors;
  std::size_t round = 0;

  void validate() const;
};

/// Embedding a node computes over its own single-node shard: the input layer
/// followed by rounds-1 hidden applications, no neighbours.
Embedding local_embedding(const EmbeddingModel& model, std::span<const double> features, std::size_t rounds);

/// Round-0 state: every node's anchor and initial embedding is its local embedding.
SharingState initial_state(std::shared_ptr<const KnowledgeGraph> graph, const EmbeddingMap& features,
                           const EmbeddingModel& model, std::size_t rounds);

/// normalize(sigma(U * ((1 - w) * mean(neighbors + {self}) + w * anchor)))
Embedding anchored_forward(const SageLayer& layer, const Embedding& self_vec, std::span<const Embedding> neighbor_vecs,
                           const Embedding& anchor, double anchor_weight);

/// One synchronous exchange: every node reads round r values, writes round r+1.
SharingState local_share_round(const SharingState& state, const SageLayer& layer,
                               double anchor_weight = kDefaultAnchorWeight);

struct KnowledgeMap {
  EmbeddingMap entries;
  std::size_t rounds_used = 0;
  bool converged = false;
  double final_delta = 0.0;

  nlohmann::json to_json() const;
};

/// Repeats local_share_round until the largest per-node change drops below
/// the tolerance or max_rounds is reached.
KnowledgeMap run_sharing(const SharingState& state, const SageLayer& layer, const SharingConfig& config);

std::map<NodeId, double> map_distance(const KnowledgeMap& a, const KnowledgeMap& b);

}  // namespace kshare
