#include "kshare/sharing.hpp"

#include <algorithm>
#include <cmath>

#include "kshare/error.hpp"

namespace kshare {

void SharingConfig::validate() const {
  if (max_rounds < 1) throw Error(ErrorCode::InvalidConfig, "max_rounds must be >= 1");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
  if (!(anchor_weight >= 0.0 && anchor_weight <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "anchor weight must lie in [0, 1]");
  }
}

void SharingState::validate() const {
  if (!graph) throw Error(ErrorCode::InvalidConfig, "sharing state has no graph");
  if (embeddings.size() != graph->node_count() || anchors.size() != graph->node_count()) {
    throw Error(ErrorCode::NodeSetMismatch, "sharing state is not keyed by the graph's node set");
  }
  std::size_t dim = 0;
  for (const auto& [id, e] : embeddings) {
    if (!graph->contains(id) || !anchors.contains(id)) {
      throw Error(ErrorCode::NodeSetMismatch, "sharing state has an entry for unknown node " + id);
    }
    if (dim == 0) dim = e.size();
    if (e.size() != dim || anchors.at(id).size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "sharing state embeddings differ in dimension");
    }
  }
}

Embedding local_embedding(const EmbeddingModel& model, std::span<const double> features, std::size_t rounds) {
  if (rounds < 1) throw Error(ErrorCode::InvalidConfig, "embedding rounds must be >= 1");
  Embedding z = layer_forward(model.input, Embedding(features.begin(), features.end()), {});
  for (std::size_t l = 1; l < rounds; ++l) z = layer_forward(model.hidden, z, {});
  return z;
}

SharingState initial_state(std::shared_ptr<const KnowledgeGraph> graph, const EmbeddingMap& features,
                           const EmbeddingModel& model, std::size_t rounds) {
  if (!graph) throw Error(ErrorCode::InvalidConfig, "sharing state needs a graph");
  if (features.size() != graph->node_count()) {
    throw Error(ErrorCode::NodeSetMismatch, "feature map does not cover exactly the graph's nodes");
  }
  SharingState state;
  state.graph = std::move(graph);
  for (const auto& [id, x] : features) {
    if (!state.graph->contains(id)) throw Error(ErrorCode::NodeSetMismatch, "feature for unknown node " + id);
    state.anchors.emplace(id, local_embedding(model, x, rounds));
  }
  state.embeddings = state.anchors;
  return state;
}

Embedding anchored_forward(const SageLayer& layer, const Embedding& self_vec, std::span<const Embedding> neighbor_vecs,
                           const Embedding& anchor, double anchor_weight) {
  if (anchor_weight == 0.0) return layer_forward(layer, self_vec, neighbor_vecs);
  if (self_vec.size() != layer.in_dim() || anchor.size() != layer.in_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "sharing input does not match layer input dimension");
  }
  std::vector<Embedding> pool;
  pool.reserve(neighbor_vecs.size() + 1);
  pool.push_back(self_vec);
  pool.insert(pool.end(), neighbor_vecs.begin(), neighbor_vecs.end());
  Embedding mixed = aggregate(pool);
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    mixed[i] = (1.0 - anchor_weight) * mixed[i] + anchor_weight * anchor[i];
  }
  return transform(layer, mixed);
}

SharingState local_share_round(const SharingState& state, const SageLayer& layer, double anchor_weight) {
  state.validate();
  SharingState next;
  next.graph = state.graph;
  next.anchors = state.anchors;
  next.round = state.round + 1;

  std::vector<Embedding> gathered;
  for (const auto& [id, self_vec] : state.embeddings) {
    gathered.clear();
    for (const auto& u : state.graph->neighbors(id)) gathered.push_back(state.embeddings.at(u));
    next.embeddings.emplace(id, anchored_forward(layer, self_vec, gathered, state.anchors.at(id), anchor_weight));
  }
  return next;
}

namespace {

double max_delta(const EmbeddingMap& before, const EmbeddingMap& after) {
  double delta = 0.0;
  for (const auto& [id, e] : after) delta = std::max(delta, l2_distance(e, before.at(id)));
  return delta;
}

}  // namespace

KnowledgeMap run_sharing(const SharingState& state, const SageLayer& layer, const SharingConfig& config) {
  config.validate();
  state.validate();

  SharingState current = state;
  KnowledgeMap map;
  for (std::size_t r = 0; r < config.max_rounds; ++r) {
    SharingState next = local_share_round(current, layer, config.anchor_weight);
    map.final_delta = max_delta(current.embeddings, next.embeddings);
    map.rounds_used = r + 1;
    current = std::move(next);
    if (map.final_delta < config.tolerance) {
      map.converged = true;
      break;
    }
  }
  map.entries = std::move(current.embeddings);
  return map;
}

nlohmann::json KnowledgeMap::to_json() const {
  nlohmann::json entries_json = nlohmann::json::object();
  for (const auto& [id, e] : entries) entries_json[id] = e;
  return {{"round", rounds_used}, {"converged", converged}, {"final_delta", final_delta}, {"entries", entries_json}};
}

std::map<NodeId, double> map_distance(const KnowledgeMap& a, const KnowledgeMap& b) {
  if (a.entries.size() != b.entries.size()) throw Error(ErrorCode::NodeSetMismatch, "maps cover different node sets");
  std::map<NodeId, double> out;
  for (const auto& [id, e] : a.entries) {
    auto it = b.entries.find(id);
    if (it == b.entries.end()) throw Error(ErrorCode::NodeSetMismatch, "node " + id + " missing from second map");
    out.emplace(id, l2_distance(e, it->second));
  }
  return out;
}

}  // namespace kshare
