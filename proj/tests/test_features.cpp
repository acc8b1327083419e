#include <gtest/gtest.h>

#include <sstream>

#include "kshare/error.hpp"
#include "kshare/features.hpp"

using namespace kshare;

namespace {

const NodeFeatures kIdle{0.0, 8192.0, 8192.0};

}  // namespace

TEST(Workload, SetWorkloadExamples) {
  auto f = set_workload(kIdle, WorkloadPercent(0));
  EXPECT_EQ(f.cpu_usage, 0.0);
  EXPECT_EQ(f.mem_available, 8192.0);

  f = set_workload(kIdle, WorkloadPercent(50));
  EXPECT_EQ(f.cpu_usage, 0.5);
  EXPECT_EQ(f.mem_available, 4096.0);

  f = set_workload(kIdle, WorkloadPercent(100));
  EXPECT_EQ(f.cpu_usage, 1.0);
  EXPECT_EQ(f.mem_available, 0.0);
}

TEST(Workload, RejectsOffGridValues) {
  for (int bad : {-10, 5, 55, 110}) EXPECT_THROW(WorkloadPercent{bad}, Error) << bad;
  EXPECT_EQ(default_sweep().size(), 11u);
  EXPECT_EQ(default_sweep().front().value(), 0);
  EXPECT_EQ(default_sweep().back().value(), 100);
}

TEST(Fluctuation, ZeroMagnitudeIsIdentity) {
  const auto f = set_workload(kIdle, WorkloadPercent(50));
  EXPECT_EQ(apply_fluctuation(f, 7, "node-3", 4, 0.0), f);
}

TEST(Fluctuation, Deterministic) {
  const auto f = set_workload(kIdle, WorkloadPercent(50));
  EXPECT_EQ(apply_fluctuation(f, 42, "node-1", 3, 0.02), apply_fluctuation(f, 42, "node-1", 3, 0.02));
  // Different node, step or seed draws a different stream.
  EXPECT_NE(apply_fluctuation(f, 42, "node-1", 3, 0.02), apply_fluctuation(f, 42, "node-2", 3, 0.02));
  EXPECT_NE(apply_fluctuation(f, 42, "node-1", 3, 0.02), apply_fluctuation(f, 42, "node-1", 4, 0.02));
  EXPECT_NE(apply_fluctuation(f, 42, "node-1", 3, 0.02), apply_fluctuation(f, 43, "node-1", 3, 0.02));
}

TEST(Fluctuation, StaysWithinUniformBound) {
  const auto f = set_workload(kIdle, WorkloadPercent(50));
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto g = apply_fluctuation(f, seed, "node-0", 0, 0.02);
    EXPECT_GE(g.cpu_usage, 0.49);
    EXPECT_LE(g.cpu_usage, 0.51);
    EXPECT_GE(g.mem_available, 4096.0 * 0.98);
    EXPECT_LE(g.mem_available, 4096.0 * 1.02);
  }
}

TEST(Fluctuation, MagnitudeOutOfRange) {
  for (double m : {-0.01, 0.1, 0.5}) {
    try {
      apply_fluctuation(kIdle, 1, "node-0", 0, m);
      ADD_FAILURE() << m;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MagnitudeOutOfRange);
    }
  }
}

TEST(Fluctuation, ClampingKeepsInvariantsForAnySeed) {
  for (int w = 0; w <= 100; w += 10) {
    const auto f = set_workload(kIdle, WorkloadPercent(w));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      for (double m : {0.0, 0.01, 0.05, 0.0999}) {
        const auto g = apply_fluctuation(f, seed * 7919 + static_cast<std::uint64_t>(w), "node-" + std::to_string(seed % 20), seed, m);
        ASSERT_TRUE(g.valid()) << "w=" << w << " seed=" << seed << " m=" << m;
      }
    }
  }
}

TEST(FeatureVector, Examples) {
  EXPECT_EQ(feature_vector({0.5, 4096, 8192}), (std::vector<double>{0.5, 0.5, 1.0}));
  EXPECT_EQ(feature_vector({0.0, 8192, 8192}), (std::vector<double>{0.0, 1.0, 1.0}));
  EXPECT_EQ(feature_vector({1.0, 0, 8192}), (std::vector<double>{1.0, 0.0, 1.0}));
}

TEST(FeatureVector, MonotoneInWorkload) {
  for (int w = 0; w < 100; w += 10) {
    const auto lo = feature_vector(set_workload(kIdle, WorkloadPercent(w)));
    const auto hi = feature_vector(set_workload(kIdle, WorkloadPercent(w + 10)));
    EXPECT_LT(lo[0], hi[0]);
    EXPECT_GT(lo[1], hi[1]);
    for (double x : hi) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(FluctuationTrace, CsvLayout) {
  std::ostringstream out;
  write_fluctuation_csv(out, {{0, "node-0", {0.5, 4096, 8192}}, {1, "node-1", {0.25, 6144, 8192}}});
  EXPECT_EQ(out.str(), "step,node_id,cpu_usage,mem_available\n0,node-0,0.5,4096\n1,node-1,0.25,6144\n");
}
