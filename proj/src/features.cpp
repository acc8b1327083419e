#include "kshare/features.hpp"

#include <algorithm>
#include <ostream>

#include "kshare/error.hpp"
#include "kshare/format.hpp"

namespace kshare {

bool NodeFeatures::valid() const noexcept {
  return cpu_usage >= 0.0 && cpu_usage <= 1.0 && mem_total > 0.0 && mem_available >= 0.0 &&
         mem_available <= mem_total;
}

WorkloadPercent::WorkloadPercent(int value) : value_(value) {
  if (value < 0 || value > 100 || value % 10 != 0) {
    throw Error(ErrorCode::InvalidWorkload,
                "workload must be a multiple of 10 in [0, 100], got " + std::to_string(value));
  }
}

std::vector<WorkloadPercent> default_sweep() {
  std::vector<WorkloadPercent> sweep;
  for (int w = 0; w <= 100; w += 10) sweep.emplace_back(w);
  return sweep;
}

NodeFeatures set_workload(const NodeFeatures& features, WorkloadPercent w) {
  NodeFeatures out = features;
  out.cpu_usage = w.fraction();
  out.mem_available = features.mem_total * (1.0 - w.fraction());
  return out;
}

NodeFeatures apply_fluctuation(const NodeFeatures& features, RngSeed seed, std::string_view node_id,
                               std::uint64_t step, double magnitude) {
  if (!(magnitude >= 0.0 && magnitude < 0.1)) {
    throw Error(ErrorCode::MagnitudeOutOfRange, "fluctuation magnitude must lie in [0, 0.1)");
  }
  if (magnitude == 0.0) return features;

  Rng rng(derive_seed(derive_seed(seed, fnv1a(node_id)), step));
  const double u_cpu = rng.uniform(-magnitude, magnitude);
  const double u_mem = rng.uniform(-magnitude, magnitude);

  NodeFeatures out = features;
  out.cpu_usage = std::clamp(features.cpu_usage * (1.0 + u_cpu), 0.0, 1.0);
  out.mem_available = std::clamp(features.mem_available * (1.0 + u_mem), 0.0, features.mem_total);
  return out;
}

std::vector<double> feature_vector(const NodeFeatures& features) {
  return {features.cpu_usage, features.mem_available / features.mem_total, 1.0};
}

void write_fluctuation_csv(std::ostream& out, const std::vector<FluctuationSample>& trace) {
  out << "step,node_id,cpu_usage,mem_available\n";
  for (const auto& s : trace) {
    out << s.step << ',' << s.node_id << ',' << format_real(s.features.cpu_usage) << ','
        << format_real(s.features.mem_available) << '\n';
  }
}

}  // namespace kshare
