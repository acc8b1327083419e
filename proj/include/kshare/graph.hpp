#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace kshare {

using NodeId = std::string;
using RelationType = std::string;
using Properties = std::map<std::string, double>;

inline constexpr std::string_view kComputationalNode = "ComputationalNode";
inline constexpr std::string_view kConnectedTo = "CONNECTED_TO";

enum class TopologyKind { Ring, FullyConnected, Line };

std::string_view to_string(TopologyKind kind) noexcept;
/// Accepts the CLI spellings "ring", "full", "line".
TopologyKind parse_topology(std::string_view name);

struct NodeRecord {
  std::set<std::string> labels;
  Properties properties;

  bool operator==(const NodeRecord&) const = default;
};

struct Triple {
  NodeId source;
  RelationType relation;
  NodeId target;

  auto operator<=>(const Triple&) const = default;
};

/// Property graph: labelled nodes with scalar properties and directed typed
/// edges stored as (source, relation, target) triples.
class KnowledgeGraph {
public:
  void add_node(const NodeId& id, std::set<std::string> labels, Properties properties = {});
  void add_edge(const NodeId& source, const RelationType& relation, const NodeId& target);

  bool contains(const NodeId& id) const { return nodes_.contains(id); }
  const NodeRecord& node(const NodeId& id) const;
  const std::map<NodeId, NodeRecord>& nodes() const noexcept { return nodes_; }
  const std::set<Triple>& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sources of all edges into `id`, sorted by id, without duplicates.
  std::vector<NodeId> neighbors(const NodeId& id) const;
  std::vector<NodeId> node_ids() const;

  nlohmann::json to_json() const;

  bool operator==(const KnowledgeGraph&) const = default;

private:
  std::map<NodeId, NodeRecord> nodes_;
  std::set<Triple> edges_;
  std::map<NodeId, std::set<NodeId>> in_neighbors_;
};

std::string node_name(std::size_t index);

/// Deterministic experimental topologies. Every undirected link becomes two
/// CONNECTED_TO triples.
KnowledgeGraph build_topology(TopologyKind kind, std::size_t n);

}  // namespace kshare
