#pragma once

#include <cstdint>
#include <vector>

#include "maglab/metric_space.hpp"
#include "maglab/rng.hpp"
#include "oracles.hpp"

namespace testing_support {

inline maglab::Matrix to_matrix(const oracle::Table& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  maglab::Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = t[i][j];
  return m;
}

inline oracle::Table to_table(const maglab::Matrix& m) {
  oracle::Table t(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t[i][j] = m(i, j);
  return t;
}

inline maglab::FiniteMetricSpace line_space(const std::vector<double>& x) {
  return maglab::FiniteMetricSpace(to_matrix(oracle::line_distances(x)));
}

// Distinct points in [0, extent) with gaps at least min_gap.
inline std::vector<double> random_line_points(maglab::CounterRng& rng, int count, double extent,
                                              double min_gap = 1e-3) {
  std::vector<double> x;
  double pos = 0.0;
  for (int i = 0; i < count; ++i) {
    x.push_back(pos);
    pos += min_gap + rng.uniform() * extent / count;
  }
  return x;
}

// Points of l_2^dim in the cube [0, extent]^dim.
inline oracle::Table random_euclidean_distances(maglab::CounterRng& rng, int count, int dim, double extent) {
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& c : p) c = rng.uniform() * extent;
  oracle::Table d(count, std::vector<double>(count, 0.0));
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      d[i][j] = std::sqrt(s);
    }
  return d;
}

}  // namespace testing_support
