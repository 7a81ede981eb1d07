#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maglab/space_spec.hpp"

namespace maglab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative slack for the triangle inequality and for symmetry checks.
inline constexpr double kMetricSlack = 1e-9;

struct TriangleViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;  // d(i,j) - d(i,k) - d(k,j)
};

struct ValidationReport {
  bool ok = true;
  double worst_triangle_violation = 0.0;
  double worst_asymmetry = 0.0;
  double worst_diagonal = 0.0;
  double min_offdiagonal = 0.0;
  // The largest violations, worst first (capped at kMaxOffendingTriples).
  std::vector<TriangleViolation> offending_triples;

  static constexpr std::size_t kMaxOffendingTriples = 64;
};

// Checks the metric axioms on a raw matrix. Throws NonSquareMatrix or
// NonFiniteEntry; every other defect is reported, not thrown.
ValidationReport validate_metric(const Matrix& dist);

// A finite metric space: a symmetric distance matrix with point labels.
//
// The constructor enforces the O(n^2) invariants (square, finite, zero
// diagonal, positive off-diagonal, symmetric within slack) and stores the
// upper triangle mirrored into the lower one. The O(n^3) triangle inequality
// is checked by checked() and by validate_metric(); generators and the metric
// transforms below preserve it by construction.
class FiniteMetricSpace {
 public:
  explicit FiniteMetricSpace(Matrix dist, std::vector<std::string> labels = {},
                             std::optional<SpaceSpec> provenance = std::nullopt);

  // Full validation including the triangle inequality; throws InvalidMetric.
  static FiniteMetricSpace checked(Matrix dist, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return labels_.size(); }
  const Matrix& dist() const noexcept { return dist_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<SpaceSpec>& provenance() const noexcept { return provenance_; }

  double diameter() const;

  // Induced subspace on the given indices, in the given order.
  FiniteMetricSpace subspace(std::span<const std::size_t> indices) const;
  FiniteMetricSpace without_point(std::size_t index) const;

 private:
  Matrix dist_;
  std::vector<std::string> labels_;
  std::optional<SpaceSpec> provenance_;
};

FiniteMetricSpace scale_space(const FiniteMetricSpace& space, double t);

// Distances raised to alpha in (0, 1]; alpha > 1 can break the triangle
// inequality and is refused.
FiniteMetricSpace snowflake_space(const FiniteMetricSpace& space, double alpha);

// l_q product: d((a,b),(a',b')) = (d_A(a,a')^q + d_B(b,b')^q)^(1/q), q >= 1
// (q = infinity gives the max metric). Points are ordered with the B index
// varying fastest.
FiniteMetricSpace lp_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b, double q);

// Hausdorff distance between two index subsets of a common space.
double hausdorff_distance(std::span<const std::size_t> subset_i,
                          std::span<const std::size_t> subset_j,
                          const FiniteMetricSpace& space);

}  // namespace maglab
