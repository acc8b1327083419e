#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kshare/embedding.hpp"

namespace kshare {

struct SymmetricEigen {
  Vector values;   // descending
  Matrix vectors;  // column j pairs with values[j]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi. Stops when the off-diagonal Frobenius norm falls below
/// 1e-12 relative to the matrix norm, or after 100 sweeps.
SymmetricEigen jacobi_eigen(const Matrix& symmetric);

Matrix sample_covariance(const Matrix& rows, const Vector& mean);

struct PcaModel {
  Vector mean;
  Matrix components;  // 2 x k, orthonormal rows
  std::array<double, 2> explained_variance{};
};

/// Top-2 principal axes of the row set. Each component's largest-magnitude
/// loading is made positive.
PcaModel fit_pca(const Matrix& rows);

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

std::vector<Point2D> project(const PcaModel& model, const Matrix& rows);
Point2D project(const PcaModel& model, std::span<const double> row);

struct ProjectedPoint {
  std::string label;
  int workload_pct = 0;
  double x = 0.0;
  double y = 0.0;
};

struct Projection2D {
  std::vector<ProjectedPoint> points;
};

/// CSV with header label,workload_pct,x,y.
void write_projection_csv(std::ostream& out, const Projection2D& projection);
/// Throws MalformedCsv on a missing header, bad field count or unparsable number.
Projection2D read_projection_csv(std::istream& in);

Matrix rows_to_matrix(const std::vector<Vector>& rows);

}  // namespace kshare
