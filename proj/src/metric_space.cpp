#include "maglab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "maglab/error.hpp"

namespace maglab {
namespace {

void require_square_finite(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "distance matrix is " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::NonSquareMatrix, os.str());
  }
  if (!m.allFinite()) throw Error(ErrorKind::NonFiniteEntry, "distance matrix has a non-finite entry");
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

struct WorseFirst {
  bool operator()(const TriangleViolation& a, const TriangleViolation& b) const {
    return a.excess > b.excess;
  }
};

}  // namespace

ValidationReport validate_metric(const Matrix& dist) {
  require_square_finite(dist);
  const Eigen::Index n = dist.rows();
  const double slack = kMetricSlack * dist.cwiseAbs().maxCoeff();

  ValidationReport report;
  report.worst_diagonal = dist.diagonal().cwiseAbs().maxCoeff();
  report.worst_asymmetry = (dist - dist.transpose()).cwiseAbs().maxCoeff();
  report.min_offdiagonal = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) report.min_offdiagonal = std::min(report.min_offdiagonal, dist(i, j));

  // Min-heap of the worst violations seen so far.
  std::priority_queue<TriangleViolation, std::vector<TriangleViolation>, WorseFirst> worst;
  double worst_excess = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == k) continue;
      const double dkj = dist(k, j);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double excess = dist(i, j) - dist(i, k) - dkj;
        if (excess <= slack || i == k || i == j) {
          if (i != k && i != j) worst_excess = std::max(worst_excess, excess);
          continue;
        }
        worst_excess = std::max(worst_excess, excess);
        if (i > j) continue;
        TriangleViolation v{static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                            static_cast<std::size_t>(k), excess};
        if (worst.size() < ValidationReport::kMaxOffendingTriples) {
          worst.push(v);
        } else if (excess > worst.top().excess) {
          worst.pop();
          worst.push(v);
        }
      }
    }
  }
  report.worst_triangle_violation = worst_excess;
  while (!worst.empty()) {
    report.offending_triples.push_back(worst.top());
    worst.pop();
  }
  std::reverse(report.offending_triples.begin(), report.offending_triples.end());

  report.ok = report.worst_diagonal == 0.0 && report.worst_asymmetry <= slack &&
              worst_excess <= slack && (n == 1 || report.min_offdiagonal > 0.0);
  return report;
}

FiniteMetricSpace::FiniteMetricSpace(Matrix dist, std::vector<std::string> labels,
                                     std::optional<SpaceSpec> provenance)
    : dist_(std::move(dist)), labels_(std::move(labels)), provenance_(std::move(provenance)) {
  require_square_finite(dist_);
  const Eigen::Index n = dist_.rows();
  if (labels_.empty()) labels_ = default_labels(static_cast<std::size_t>(n));
  if (labels_.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::InvalidMetric, "label count does not match the matrix size");

  const double slack = kMetricSlack * dist_.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (dist_(j, j) != 0.0) throw Error(ErrorKind::InvalidMetric, "nonzero diagonal entry");
    for (Eigen::Index i = 0; i < j; ++i) {
      if (!(dist_(i, j) > 0.0)) {
        std::ostringstream os;
        os << "distance between points " << i << " and " << j << " is not positive";
        throw Error(ErrorKind::InvalidMetric, os.str());
      }
      if (std::abs(dist_(i, j) - dist_(j, i)) > slack)
        throw Error(ErrorKind::InvalidMetric, "matrix is not symmetric");
      dist_(j, i) = dist_(i, j);
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::checked(Matrix dist, std::vector<std::string> labels) {
  const ValidationReport report = validate_metric(dist);
  if (!report.ok) {
    std::ostringstream os;
    os << "metric axioms violated (worst triangle excess " << report.worst_triangle_violation
       << ", worst asymmetry " << report.worst_asymmetry << ")";
    throw Error(ErrorKind::InvalidMetric, os.str());
  }
  return FiniteMetricSpace(std::move(dist), std::move(labels));
}

double FiniteMetricSpace::diameter() const { return dist_.maxCoeff(); }

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> indices) const {
  if (indices.empty()) throw Error(ErrorKind::EmptySubset, "subspace needs at least one point");
  const auto m = static_cast<Eigen::Index>(indices.size());
  Matrix sub(m, m);
  std::vector<std::string> sub_labels;
  sub_labels.reserve(indices.size());
  for (Eigen::Index a = 0; a < m; ++a) {
    if (indices[a] >= size()) throw Error(ErrorKind::IndexOutOfRange, "subspace index out of range");
    sub_labels.push_back(labels_[indices[a]]);
    for (Eigen::Index b = 0; b < m; ++b)
      sub(a, b) = dist_(static_cast<Eigen::Index>(indices[a]), static_cast<Eigen::Index>(indices[b]));
  }
  return FiniteMetricSpace(std::move(sub), std::move(sub_labels));
}

FiniteMetricSpace FiniteMetricSpace::without_point(std::size_t index) const {
  if (index >= size()) throw Error(ErrorKind::IndexOutOfRange, "point index out of range");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i)
    if (i != index) keep.push_back(i);
  return subspace(keep);
}

FiniteMetricSpace scale_space(const FiniteMetricSpace& space, double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::NonpositiveScale, "scale must be positive and finite");
  std::optional<SpaceSpec> provenance = space.provenance();
  if (provenance) provenance->scale *= t;
  return FiniteMetricSpace(t * space.dist(), space.labels(), std::move(provenance));
}

FiniteMetricSpace snowflake_space(const FiniteMetricSpace& space, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::ExponentOutOfRange, "snowflake exponent must lie in (0, 1]");
  // (t d^a)^b = t^b d^(ab)
  std::optional<SpaceSpec> provenance = space.provenance();
  if (provenance) {
    provenance->scale = std::pow(provenance->scale, alpha);
    provenance->snowflake *= alpha;
  }
  if (alpha == 1.0) return FiniteMetricSpace(space.dist(), space.labels(), std::move(provenance));
  return FiniteMetricSpace(space.dist().array().pow(alpha).matrix(), space.labels(),
                           std::move(provenance));
}

FiniteMetricSpace lp_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b, double q) {
  if (!(q >= 1.0)) throw Error(ErrorKind::ExponentOutOfRange, "product exponent q must be >= 1");
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Matrix dist(na * nb, na * nb);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(na * nb));
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j)
      labels.push_back("(" + a.labels()[i] + "," + b.labels()[j] + ")");

  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j)
      for (Eigen::Index k = 0; k < na; ++k)
        for (Eigen::Index l = 0; l < nb; ++l) {
          const double x = a(i, k), y = b(j, l);
          double d;
          if (std::isinf(q)) {
            d = std::max(x, y);
          } else if (q == 1.0) {
            d = x + y;
          } else if (q == 2.0) {
            d = std::hypot(x, y);
          } else {
            d = std::pow(std::pow(x, q) + std::pow(y, q), 1.0 / q);
          }
          dist(i * nb + j, k * nb + l) = d;
        }
  return FiniteMetricSpace(std::move(dist), std::move(labels));
}

double hausdorff_distance(std::span<const std::size_t> subset_i, std::span<const std::size_t> subset_j,
                          const FiniteMetricSpace& space) {
  if (subset_i.empty() || subset_j.empty())
    throw Error(ErrorKind::EmptySubset, "Hausdorff distance needs nonempty subsets");
  for (auto idx : subset_i)
    if (idx >= space.size()) throw Error(ErrorKind::IndexOutOfRange, "subset index out of range");
  for (auto idx : subset_j)
    if (idx >= space.size()) throw Error(ErrorKind::IndexOutOfRange, "subset index out of range");

  auto directed = [&](std::span<const std::size_t> from, std::span<const std::size_t> to) {
    double sup = 0.0;
    for (auto x : from) {
      double inf = std::numeric_limits<double>::infinity();
      for (auto y : to) inf = std::min(inf, space(x, y));
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(subset_i, subset_j), directed(subset_j, subset_i));
}

}  // namespace maglab
