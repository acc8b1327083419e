#include "kshare/pca.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "kshare/error.hpp"
#include "kshare/format.hpp"

namespace kshare {

namespace {

constexpr double kJacobiRelativeTolerance = 1e-12;
constexpr std::size_t kJacobiMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (i != j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (double x : a.data) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric) {
  if (symmetric.rows != symmetric.cols) throw Error(ErrorCode::DimensionMismatch, "eigensolver needs a square matrix");
  const std::size_t n = symmetric.rows;
  Matrix a = symmetric;
  Matrix v = Matrix::identity(n);
  const double threshold = kJacobiRelativeTolerance * frobenius_norm(a);

  std::size_t sweep = 0;
  while (sweep < kJacobiMaxSweeps && off_diagonal_norm(a) > threshold) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that zeroes a(p, q); t is the smaller root of
        // t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

Matrix sample_covariance(const Matrix& rows, const Vector& mean) {
  const std::size_t m = rows.rows;
  const std::size_t k = rows.cols;
  Matrix cov(k, k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < k; ++i) {
      const double di = rows(r, i) - mean[i];
      for (std::size_t j = i; j < k; ++j) cov(i, j) += di * (rows(r, j) - mean[j]);
    }
  const double divisor = static_cast<double>(m - 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      cov(i, j) /= divisor;
      cov(j, i) = cov(i, j);
    }
  return cov;
}

PcaModel fit_pca(const Matrix& rows) {
  if (rows.rows < 3) throw Error(ErrorCode::TooFewRows, "PCA needs at least 3 rows");
  if (rows.cols < 2) throw Error(ErrorCode::DimensionMismatch, "PCA needs at least 2 columns");
  const std::size_t m = rows.rows;
  const std::size_t k = rows.cols;

  bool all_same = true;
  for (std::size_t r = 1; r < m && all_same; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (rows(r, c) != rows(0, c)) {
        all_same = false;
        break;
      }
  if (all_same) throw Error(ErrorCode::DegenerateInput, "all PCA input rows are identical");

  PcaModel model;
  model.mean.assign(k, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < k; ++c) model.mean[c] += rows(r, c);
  for (auto& x : model.mean) x /= static_cast<double>(m);

  const auto eig = jacobi_eigen(sample_covariance(rows, model.mean));
  model.components = Matrix(2, k);
  for (std::size_t j = 0; j < 2; ++j) {
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < k; ++i)
      if (std::abs(eig.vectors(i, j)) > std::abs(eig.vectors(pivot, j))) pivot = i;
    const double sign = eig.vectors(pivot, j) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < k; ++i) model.components(j, i) = sign * eig.vectors(i, j);
    // Round-off can leave a tiny negative value for a null direction.
    model.explained_variance[j] = std::max(eig.values[j], 0.0);
  }
  return model;
}

Point2D project(const PcaModel& model, std::span<const double> row) {
  if (row.size() != model.mean.size()) throw Error(ErrorCode::DimensionMismatch, "row does not match PCA dimension");
  Point2D p;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const double centered = row[i] - model.mean[i];
    p.x += centered * model.components(0, i);
    p.y += centered * model.components(1, i);
  }
  return p;
}

std::vector<Point2D> project(const PcaModel& model, const Matrix& rows) {
  if (rows.cols != model.mean.size()) throw Error(ErrorCode::DimensionMismatch, "rows do not match PCA dimension");
  std::vector<Point2D> out;
  out.reserve(rows.rows);
  for (std::size_t r = 0; r < rows.rows; ++r) {
    out.push_back(project(model, std::span<const double>(rows.data.data() + r * rows.cols, rows.cols)));
  }
  return out;
}

Matrix rows_to_matrix(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols) throw Error(ErrorCode::DimensionMismatch, "rows differ in length");
    std::copy(rows[r].begin(), rows[r].end(), m.data.begin() + static_cast<std::ptrdiff_t>(r * m.cols));
  }
  return m;
}

void write_projection_csv(std::ostream& out, const Projection2D& projection) {
  out << "label,workload_pct,x,y\n";
  for (const auto& p : projection.points) {
    out << p.label << ',' << p.workload_pct << ',' << format_real(p.x) << ',' << format_real(p.y) << '\n';
  }
}

namespace {

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::MalformedCsv, "bad number '" + std::string(field) + "' on line " + std::to_string(line_no));
  }
  return value;
}

}  // namespace

Projection2D read_projection_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedCsv, "empty projection file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "label,workload_pct,x,y") throw Error(ErrorCode::MalformedCsv, "unexpected header '" + line + "'");

  Projection2D projection;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 4) {
      throw Error(ErrorCode::MalformedCsv, "expected 4 fields on line " + std::to_string(line_no));
    }
    projection.points.push_back({fields[0], parse_number<int>(fields[1], line_no),
                                 parse_number<double>(fields[2], line_no), parse_number<double>(fields[3], line_no)});
  }
  if (projection.points.empty()) throw Error(ErrorCode::MalformedCsv, "projection file has no data rows");
  return projection;
}

}  // namespace kshare
