#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kshare/rng.hpp"

namespace kshare {

inline constexpr double kDefaultMemTotalMiB = 8192.0;
inline constexpr double kDefaultFluctuation = 0.02;
inline constexpr std::size_t kFeatureDimension = 3;

/// Operational metrics of one computational node.
struct NodeFeatures {
  double cpu_usage = 0.0;      // fraction in [0, 1]
  double mem_available = 0.0;  // MiB, in [0, mem_total]
  double mem_total = kDefaultMemTotalMiB;

  bool valid() const noexcept;
  bool operator==(const NodeFeatures&) const = default;
};

/// Workload percentage restricted to {0, 10, ..., 100}.
class WorkloadPercent {
public:
  explicit WorkloadPercent(int value);

  int value() const noexcept { return value_; }
  double fraction() const noexcept { return value_ / 100.0; }

  auto operator<=>(const WorkloadPercent&) const = default;

private:
  int value_;
};

/// Default sweep 0, 10, ..., 100.
std::vector<WorkloadPercent> default_sweep();

NodeFeatures set_workload(const NodeFeatures& features, WorkloadPercent w);

/// Multiplies cpu and available memory by (1 + u), u ~ U[-magnitude, magnitude],
/// drawn from a stream keyed by (seed, node id, step). Results are clamped.
NodeFeatures apply_fluctuation(const NodeFeatures& features, RngSeed seed, std::string_view node_id,
                               std::uint64_t step, double magnitude);

/// [cpu_usage, mem_available / mem_total, 1.0]
std::vector<double> feature_vector(const NodeFeatures& features);

struct FluctuationSample {
  std::uint64_t step;
  std::string node_id;
  NodeFeatures features;
};

/// CSV with header step,node_id,cpu_usage,mem_available.
void write_fluctuation_csv(std::ostream& out, const std::vector<FluctuationSample>& trace);

}  // namespace kshare
