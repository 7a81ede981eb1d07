#pragma once

// Reference computations for the test suites. Deliberately naive and kept
// apart from the library's linear algebra.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting in long double.
inline std::optional<std::vector<double>> solve(const Table& a_in, const std::vector<double>& b_in) {
  const std::size_t n = a_in.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = a_in[i][j];
    a[i][n] = b_in[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (std::fabs(a[piv][c]) < 1e-300L) return std::nullopt;
    std::swap(a[c], a[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = a[i][n];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = static_cast<double>(s / a[i][i]);
  }
  return x;
}

inline Table similarity(const Table& d) {
  Table z = d;
  for (auto& row : z)
    for (double& x : row) x = std::exp(-x);
  return z;
}

inline double magnitude(const Table& d) {
  const auto w = solve(similarity(d), std::vector<double>(d.size(), 1.0));
  return std::accumulate(w->begin(), w->end(), 0.0);
}

// Magnitude of a finite subset of the real line: 1 + sum tanh(gap / 2).
inline double line_magnitude(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  double m = 1.0;
  for (std::size_t i = 1; i < points.size(); ++i) m += std::tanh(0.5 * (points[i] - points[i - 1]));
  return m;
}

inline Table line_distances(const std::vector<double>& x) {
  Table d(x.size(), std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) d[i][j] = std::abs(x[i] - x[j]);
  return d;
}

// Maximum diversity of a positive definite space: the largest magnitude of a
// subset whose weighting is nonnegative.
inline double diversity_by_enumeration(const Table& d) {
  const std::size_t n = d.size();
  double best = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    Table sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = d[idx[a]][idx[b]];
    const auto w = solve(similarity(sub), std::vector<double>(idx.size(), 1.0));
    if (!w || std::any_of(w->begin(), w->end(), [](double x) { return x < -1e-12; })) continue;
    best = std::max(best, std::accumulate(w->begin(), w->end(), 0.0));
  }
  return best;
}

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> jacobi_eigenvalues(Table a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Largest eigenvalue of D restricted to the sum-zero hyperplane, computed as
// the spectrum of P D P with P = I - 11^T / n after discarding the constant
// direction. The space has negative type iff this is <= 0.
inline double sum_zero_form_max(const Table& d) {
  const std::size_t n = d.size();
  Table pdp(n, std::vector<double>(n));
  std::vector<double> row(n, 0.0), col(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      row[i] += d[i][j] / n;
      col[j] += d[i][j] / n;
      total += d[i][j] / (double(n) * n);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pdp[i][j] = d[i][j] - row[i] - col[j] + total;
  // The constant vector is an exact null vector of P D P; shift it far away.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pdp[i][j] -= 1e6 / n;
  return jacobi_eigenvalues(pdp).back();
}

// Hausdorff distance between finite subsets of the line by brute force.
inline double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  auto one_sided = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0;
    for (double p : x) {
      double best = INFINITY;
      for (double q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

// Volume of the l_p unit ball in R^n by counting cell centres of a cubical
// grid with the given number of cells per unit length.
inline double ball_volume_by_counting(int n, double p, int cells) {
  const double h = 1.0 / cells;
  long long count = 0;
  std::vector<int> idx(n, -cells);
  while (true) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::pow(std::abs((idx[k] + 0.5) * h), p);
    if (s <= 1.0) ++count;
    int k = 0;
    while (k < n && ++idx[k] == cells) idx[k++] = -cells;
    if (k == n) break;
  }
  return count * std::pow(h, n);
}

}  // namespace oracle
