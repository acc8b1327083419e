#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kshare/experiment.hpp"

namespace kshare::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Flag values for every subcommand. Defaults come from the library constants
/// so the CLI never carries its own copy of a default.
struct Options {
  std::string topology{to_string(TopologyKind::FullyConnected)};
  std::size_t nodes = kDefaultNodes;
  RngSeed seed = kDefaultSeed;
  std::string target{kDefaultTarget};
  int baseline = kDefaultBaselineWorkload;
  std::size_t dim = kDefaultDimension;
  std::size_t rounds = kDefaultRounds;
  std::string activation{to_string(kDefaultActivation)};
  double tolerance = kDefaultTolerance;
  std::size_t max_rounds = kDefaultMaxRounds;
  double anchor_weight = kDefaultAnchorWeight;
  double fluctuation = kDefaultFluctuation;
  std::size_t workers = 1;
  std::string out = "drift-output";
  int workload = kDefaultBaselineWorkload;
  std::string embed_out;
  std::string input;
  std::string output;
};

DriftConfig to_drift_config(const Options& options);

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kshare::cli
