#include <gtest/gtest.h>

#include <algorithm>

#include "kshare/error.hpp"
#include "kshare/graph.hpp"

using namespace kshare;

namespace {

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected kshare::Error";
  return ErrorCode::IoError;
}

std::size_t undirected_links(const KnowledgeGraph& kg) { return kg.edge_count() / 2; }

}  // namespace

TEST(KnowledgeGraph, AddNodeToEmptyGraph) {
  KnowledgeGraph kg;
  kg.add_node("n0", {"ComputationalNode"}, {{"cpu", 0.5}});
  EXPECT_EQ(kg.node_count(), 1u);
  EXPECT_EQ(kg.node("n0").properties.at("cpu"), 0.5);
  EXPECT_TRUE(kg.node("n0").labels.contains("ComputationalNode"));
}

TEST(KnowledgeGraph, AddNodeErrors) {
  KnowledgeGraph kg;
  kg.add_node("n0", {"ComputationalNode"});
  EXPECT_EQ(error_of([&] { kg.add_node("n0", {"ComputationalNode"}); }), ErrorCode::DuplicateNode);
  EXPECT_EQ(error_of([&] { kg.add_node("n1", {}, {}); }), ErrorCode::EmptyLabels);
  EXPECT_EQ(error_of([&] { kg.add_node("", {"X"}); }), ErrorCode::InvalidNodeId);
  EXPECT_EQ(kg.node_count(), 1u);
}

TEST(KnowledgeGraph, AddEdge) {
  KnowledgeGraph kg;
  kg.add_node("n0", {"ComputationalNode"});
  kg.add_node("n1", {"ComputationalNode"});
  kg.add_edge("n0", "CONNECTED_TO", "n1");
  EXPECT_EQ(kg.edge_count(), 1u);
  EXPECT_EQ(error_of([&] { kg.add_edge("n0", "CONNECTED_TO", "nX"); }), ErrorCode::MissingEndpoint);
  EXPECT_EQ(error_of([&] { kg.add_edge("nX", "CONNECTED_TO", "n0"); }), ErrorCode::MissingEndpoint);
  EXPECT_EQ(error_of([&] { kg.add_edge("n0", "CONNECTED_TO", "n1"); }), ErrorCode::DuplicateEdge);
  // A different relation between the same endpoints is a different triple.
  kg.add_edge("n0", "MONITORS", "n1");
  EXPECT_EQ(kg.edge_count(), 2u);
  EXPECT_EQ(kg.neighbors("n1"), std::vector<NodeId>{"n0"});
}

TEST(Topology, LinkCounts) {
  const auto line = build_topology(TopologyKind::Line, 5);
  EXPECT_EQ(line.node_count(), 5u);
  EXPECT_EQ(line.edge_count(), 8u);

  const auto ring = build_topology(TopologyKind::Ring, 5);
  EXPECT_EQ(undirected_links(ring), 5u);
  for (const auto& id : ring.node_ids()) EXPECT_EQ(ring.neighbors(id).size(), 2u);

  const auto full = build_topology(TopologyKind::FullyConnected, 5);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) ++pairs;
  EXPECT_EQ(undirected_links(full), pairs);
}

TEST(Topology, NodesAreComputationalNodesWithSequentialIds) {
  const auto kg = build_topology(TopologyKind::Ring, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& rec = kg.node("node-" + std::to_string(i));
    EXPECT_EQ(rec.labels, std::set<std::string>{"ComputationalNode"});
  }
  for (const auto& e : kg.edges()) {
    EXPECT_EQ(e.relation, "CONNECTED_TO");
    EXPECT_TRUE(kg.edges().contains(Triple{e.target, e.relation, e.source})) << "links must be bidirectional";
  }
}

TEST(Topology, InvalidSizes) {
  EXPECT_EQ(error_of([] { build_topology(TopologyKind::Ring, 2); }), ErrorCode::InvalidSize);
  EXPECT_EQ(error_of([] { build_topology(TopologyKind::Line, 1); }), ErrorCode::InvalidSize);
  EXPECT_EQ(error_of([] { build_topology(TopologyKind::FullyConnected, 0); }), ErrorCode::InvalidSize);
  EXPECT_NO_THROW(build_topology(TopologyKind::Line, 2));
  EXPECT_NO_THROW(build_topology(TopologyKind::Ring, 3));
}

TEST(Topology, DegreeLaw) {
  for (std::size_t n = 3; n <= 20; ++n) {
    const auto ring = build_topology(TopologyKind::Ring, n);
    const auto line = build_topology(TopologyKind::Line, n);
    const auto full = build_topology(TopologyKind::FullyConnected, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto id = node_name(i);
      EXPECT_EQ(ring.neighbors(id).size(), 2u) << "ring n=" << n;
      EXPECT_EQ(line.neighbors(id).size(), (i == 0 || i == n - 1) ? 1u : 2u) << "line n=" << n;
      EXPECT_EQ(full.neighbors(id).size(), n - 1) << "full n=" << n;
      for (const auto* kg : {&ring, &line, &full}) {
        const auto nb = kg->neighbors(id);
        EXPECT_TRUE(std::find(nb.begin(), nb.end(), id) == nb.end()) << "self-loop at " << id;
      }
    }
  }
}

TEST(Topology, BuildersArePure) {
  for (auto kind : {TopologyKind::Ring, TopologyKind::Line, TopologyKind::FullyConnected}) {
    const auto a = build_topology(kind, 7);
    const auto b = build_topology(kind, 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  }
}

TEST(Neighbors, Examples) {
  EXPECT_EQ(build_topology(TopologyKind::Line, 5).neighbors("node-0"), std::vector<NodeId>{"node-1"});
  EXPECT_EQ(build_topology(TopologyKind::Ring, 5).neighbors("node-2"), (std::vector<NodeId>{"node-1", "node-3"}));
  EXPECT_EQ(build_topology(TopologyKind::FullyConnected, 5).neighbors("node-0").size(), 4u);
  EXPECT_EQ(error_of([] { build_topology(TopologyKind::Line, 3).neighbors("node-9"); }), ErrorCode::UnknownNode);
}

TEST(Neighbors, SortedLexicographically) {
  const auto nb = build_topology(TopologyKind::FullyConnected, 12).neighbors("node-3");
  EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
  EXPECT_EQ(nb.front(), "node-0");
  EXPECT_EQ(nb[2], "node-10");
}

TEST(GraphJson, GoldenSnapshot) {
  const auto kg = build_topology(TopologyKind::Line, 2);
  EXPECT_EQ(kg.to_json().dump(),
            R"({"edges":[{"r":"CONNECTED_TO","s":"node-0","t":"node-1"},{"r":"CONNECTED_TO","s":"node-1","t":"node-0"}],)"
            R"("nodes":[{"id":"node-0","labels":["ComputationalNode"],"properties":{}},)"
            R"({"id":"node-1","labels":["ComputationalNode"],"properties":{}}]})");
}

TEST(TopologyKind, ParseNames) {
  EXPECT_EQ(parse_topology("ring"), TopologyKind::Ring);
  EXPECT_EQ(parse_topology("full"), TopologyKind::FullyConnected);
  EXPECT_EQ(parse_topology("line"), TopologyKind::Line);
  EXPECT_EQ(error_of([] { parse_topology("star"); }), ErrorCode::InvalidConfig);
}
