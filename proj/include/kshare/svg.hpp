#pragma once

#include <string>

#include "kshare/pca.hpp"

namespace kshare {

/// Scatter of a drift projection. Rows labelled "baseline/..." are drawn in
/// gray; every other row is a trajectory point coloured by workload and joined
/// by a polyline in row order. Each row becomes exactly one <circle>.
std::string render_scatter_svg(const Projection2D& projection, const std::string& title = "");

}  // namespace kshare
