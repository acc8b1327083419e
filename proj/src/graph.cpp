#include "kshare/graph.hpp"

#include "kshare/error.hpp"

namespace kshare {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::EmptyLabels: return "EmptyLabels";
    case ErrorCode::InvalidNodeId: return "InvalidNodeId";
    case ErrorCode::MissingEndpoint: return "MissingEndpoint";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::InvalidWorkload: return "InvalidWorkload";
    case ErrorCode::MagnitudeOutOfRange: return "MagnitudeOutOfRange";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NodeSetMismatch: return "NodeSetMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::TooFewSteps: return "TooFewSteps";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
  }
  return "Unknown";
}

std::string_view to_string(TopologyKind kind) noexcept {
  switch (kind) {
    case TopologyKind::Ring: return "ring";
    case TopologyKind::FullyConnected: return "full";
    case TopologyKind::Line: return "line";
  }
  return "unknown";
}

TopologyKind parse_topology(std::string_view name) {
  if (name == "ring") return TopologyKind::Ring;
  if (name == "full") return TopologyKind::FullyConnected;
  if (name == "line") return TopologyKind::Line;
  throw Error(ErrorCode::InvalidConfig, "unknown topology '" + std::string(name) + "'");
}

void KnowledgeGraph::add_node(const NodeId& id, std::set<std::string> labels, Properties properties) {
  if (id.empty()) throw Error(ErrorCode::InvalidNodeId, "node id must be non-empty");
  if (nodes_.contains(id)) throw Error(ErrorCode::DuplicateNode, id);
  if (labels.empty()) throw Error(ErrorCode::EmptyLabels, id);
  nodes_.emplace(id, NodeRecord{std::move(labels), std::move(properties)});
}

void KnowledgeGraph::add_edge(const NodeId& source, const RelationType& relation, const NodeId& target) {
  if (!nodes_.contains(source)) throw Error(ErrorCode::MissingEndpoint, source);
  if (!nodes_.contains(target)) throw Error(ErrorCode::MissingEndpoint, target);
  Triple triple{source, relation, target};
  if (edges_.contains(triple)) {
    throw Error(ErrorCode::DuplicateEdge, source + " -[" + relation + "]-> " + target);
  }
  edges_.insert(std::move(triple));
  in_neighbors_[target].insert(source);
}

const NodeRecord& KnowledgeGraph::node(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::UnknownNode, id);
  return it->second;
}

std::vector<NodeId> KnowledgeGraph::neighbors(const NodeId& id) const {
  if (!nodes_.contains(id)) throw Error(ErrorCode::UnknownNode, id);
  auto it = in_neighbors_.find(id);
  if (it == in_neighbors_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<NodeId> KnowledgeGraph::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) ids.push_back(id);
  return ids;
}

nlohmann::json KnowledgeGraph::to_json() const {
  auto nodes = nlohmann::json::array();
  for (const auto& [id, record] : nodes_) {
    nodes.push_back({{"id", id}, {"labels", record.labels}, {"properties", record.properties}});
  }
  auto edges = nlohmann::json::array();
  for (const auto& e : edges_) {
    edges.push_back({{"s", e.source}, {"r", e.relation}, {"t", e.target}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

std::string node_name(std::size_t index) { return "node-" + std::to_string(index); }

KnowledgeGraph build_topology(TopologyKind kind, std::size_t n) {
  const std::size_t minimum = kind == TopologyKind::Ring ? 3 : 2;
  if (n < minimum) {
    throw Error(ErrorCode::InvalidSize, std::string(to_string(kind)) + " topology needs at least " +
                                            std::to_string(minimum) + " nodes, got " + std::to_string(n));
  }

  KnowledgeGraph kg;
  for (std::size_t i = 0; i < n; ++i) {
    kg.add_node(node_name(i), {std::string(kComputationalNode)});
  }

  const std::string rel(kConnectedTo);
  auto link = [&](std::size_t a, std::size_t b) {
    kg.add_edge(node_name(a), rel, node_name(b));
    kg.add_edge(node_name(b), rel, node_name(a));
  };

  switch (kind) {
    case TopologyKind::Ring:
      for (std::size_t i = 0; i < n; ++i) link(i, (i + 1) % n);
      break;
    case TopologyKind::Line:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case TopologyKind::FullyConnected:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) link(i, j);
      break;
  }
  return kg;
}

}  // namespace kshare
