#pragma once

// Test-only reference implementations. They share no code with the library
// routines they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;  // row-major, Mat[r][c]

enum class Act { ReLU, Sigmoid, Identity };

inline double act(Act a, double x) {
  if (a == Act::ReLU) return x > 0 ? x : 0;
  if (a == Act::Sigmoid) return 1.0 / (1.0 + std::exp(-x));
  return x;
}

/// Straight-line GraphSAGE mean update over an explicit edge list:
/// z_v <- normalize(act(U * mean({z_u : (u, v) in edges} + {z_v}))).
/// Round 1 uses `first`, rounds 2..L use `hidden`.
inline std::vector<Vec> graphsage(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                  std::vector<Vec> z, const Mat& first, const Mat& hidden, Act a, std::size_t rounds) {
  for (std::size_t l = 0; l < rounds; ++l) {
    const Mat& U = l == 0 ? first : hidden;
    std::vector<Vec> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      Vec sum = z[v];
      double count = 1;
      for (const auto& [s, t] : edges) {
        if (t != v) continue;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += z[s][i];
        count += 1;
      }
      Vec out(U.size(), 0.0);
      for (std::size_t r = 0; r < U.size(); ++r) {
        double acc = 0;
        for (std::size_t c = 0; c < U[r].size(); ++c) acc += U[r][c] * (sum[c] / count);
        out[r] = act(a, acc);
      }
      double norm = 0;
      for (double x : out) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : out) x /= norm;
      next[v] = out;
    }
    z = std::move(next);
  }
  return z;
}

struct Eigen {
  Vec values;                // descending
  std::vector<Vec> vectors;  // vectors[j] pairs with values[j]
};

/// Classical Jacobi: always rotates the largest off-diagonal entry, until
/// every off-diagonal entry is below 1e-15 times the largest diagonal.
inline Eigen classical_jacobi(Mat a) {
  const std::size_t n = a.size();
  Mat v(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i]));
  for (int iter = 0; iter < 100000; ++iter) {
    std::size_t p = 0, q = 1;
    double best = -1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(a[i][j]) > best) {
          best = std::abs(a[i][j]);
          p = i;
          q = j;
        }
    if (best <= 1e-15 * scale || best == 0) break;

    // Rotation angle from atan2: phi = 0.5 * atan2(2 a_pq, a_qq - a_pp).
    const double phi = 0.5 * std::atan2(2 * a[p][q], a[q][q] - a[p][p]);
    const double c = std::cos(phi), s = std::sin(phi);
    Mat b = a;
    for (std::size_t k = 0; k < n; ++k) {
      b[k][p] = c * a[k][p] - s * a[k][q];
      b[k][q] = s * a[k][p] + c * a[k][q];
    }
    Mat d = b;
    for (std::size_t k = 0; k < n; ++k) {
      d[p][k] = c * b[p][k] - s * b[q][k];
      d[q][k] = s * b[p][k] + c * b[q][k];
    }
    a = d;
    for (std::size_t k = 0; k < n; ++k) {
      const double vp = v[k][p], vq = v[k][q];
      v[k][p] = c * vp - s * vq;
      v[k][q] = s * vp + c * vq;
    }
  }

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });
  Eigen out;
  for (std::size_t j : idx) {
    out.values.push_back(a[j][j]);
    Vec col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][j];
    out.vectors.push_back(col);
  }
  return out;
}

/// Sample covariance (divisor m - 1) by two explicit passes.
inline Mat covariance(const std::vector<Vec>& rows) {
  const std::size_t m = rows.size(), k = rows[0].size();
  Vec mean(k, 0.0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < k; ++i) mean[i] += r[i] / static_cast<double>(m);
  Mat cov(k, Vec(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0;
      for (const auto& r : rows) acc += (r[i] - mean[i]) * (r[j] - mean[j]);
      cov[i][j] = acc / static_cast<double>(m - 1);
    }
  return cov;
}

/// Flip so the largest-magnitude entry is positive.
inline Vec canonical_sign(Vec v) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  if (v[pivot] < 0)
    for (double& x : v) x = -x;
  return v;
}

}  // namespace oracle
