#include "maglab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "maglab/error.hpp"
#include "maglab/rng.hpp"

namespace maglab {
namespace {

double lp_norm_distance(const double* x, const double* y, Eigen::Index dim, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) s += std::abs(x[k] - y[k]);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
    return std::sqrt(s);
  }
  double s = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) s += std::pow(std::abs(x[k] - y[k]), p);
  // l_p metric for p < 1 is |x - y|_p^p.
  return p < 1.0 ? s : std::pow(s, 1.0 / p);
}

// Great-circle angle between unit vectors, accurate for nearby points.
double sphere_angle(const double* u, const double* v) {
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

// Hyperbolic distance between polar points (r1, t1), (r2, t2) in H^2 via
// sinh^2(d/2) = sinh^2((r1-r2)/2) + sinh r1 sinh r2 sin^2((t1-t2)/2),
// an exact rewrite of cosh d = cosh r1 cosh r2 - sinh r1 sinh r2 cos(t1-t2).
double hyperbolic_polar(double r1, double t1, double r2, double t2) {
  const double a = std::sinh(0.5 * (r1 - r2));
  const double b = std::sin(0.5 * (t1 - t2));
  return 2.0 * std::asinh(std::sqrt(a * a + std::sinh(r1) * std::sinh(r2) * b * b));
}

double base_distance(Family family, double shape, const Matrix& a, Eigen::Index i, const Matrix& b,
                     Eigen::Index j) {
  switch (family) {
    case Family::IntervalNet:
    case Family::CantorNet:
      return std::abs(a(i, 0) - b(j, 0));
    case Family::CircleNet: {
      const double s = std::abs(a(i, 0) - b(j, 0));
      return std::min(s, shape - s);
    }
    case Family::GridNet:
    case Family::PointCloudLp: {
      const Eigen::Index dim = a.cols();
      double x[64], y[64];
      if (dim > 64) {
        Eigen::RowVectorXd u = a.row(i), v = b.row(j);
        return lp_norm_distance(u.data(), v.data(), dim, shape);
      }
      for (Eigen::Index k = 0; k < dim; ++k) {
        x[k] = a(i, k);
        y[k] = b(j, k);
      }
      return lp_norm_distance(x, y, dim, shape);
    }
    case Family::SphereFibonacciNet: {
      const double u[3] = {a(i, 0), a(i, 1), a(i, 2)};
      const double v[3] = {b(j, 0), b(j, 1), b(j, 2)};
      return shape * sphere_angle(u, v);
    }
    case Family::HyperbolicDiskNet:
      return hyperbolic_polar(a(i, 0), a(i, 1), b(j, 0), b(j, 1));
    default:
      throw Error(ErrorKind::UnsupportedFamily, "family has no ambient coordinates");
  }
}

double transform(double base, double scale, double snowflake) {
  return scale * (snowflake == 1.0 ? base : std::pow(base, snowflake));
}

// Level-k Cantor endpoints as integers over 3^k, ascending.
std::vector<std::int64_t> cantor_endpoints(int k) {
  std::vector<std::int64_t> left{0};
  // Left endpoints of the level-k intervals, in units of 3^-k.
  for (int level = 0; level < k; ++level) {
    std::int64_t child = 1;
    for (int l = level + 1; l < k; ++l) child *= 3;
    std::vector<std::int64_t> next;
    next.reserve(left.size() * 2);
    for (auto a : left) {
      next.push_back(a);
      next.push_back(a + 2 * child);
    }
    left = std::move(next);
  }
  std::vector<std::int64_t> points;
  points.reserve(left.size() * 2);
  for (auto a : left) {
    points.push_back(a);
    points.push_back(a + 1);
  }
  return points;
}

std::int64_t pow3(int k) {
  std::int64_t w = 1;
  for (int i = 0; i < k; ++i) w *= 3;
  return w;
}

Matrix interval_coords(const SpaceSpec& spec) {
  const double length = spec.param("length", 1.0);
  const int n = spec.require_count("n", 1);
  const bool chebyshev = spec.param("chebyshev", 0.0) != 0.0;
  Matrix x(n, 1);
  if (n == 1) {
    x(0, 0) = 0.0;
    return x;
  }
  for (int i = 0; i < n; ++i) {
    if (chebyshev) {
      // sin form of (1 - cos)/2 keeps small nodes accurate; endpoints exact.
      const double s = std::sin(0.5 * M_PI * i / (n - 1));
      x(i, 0) = (i == n - 1) ? length : length * s * s;
    } else {
      x(i, 0) = length * static_cast<double>(i) / static_cast<double>(n - 1);
    }
  }
  return x;
}

Matrix grid_coords(const SpaceSpec& spec) {
  const int m = spec.require_count("m", 1);
  const int dim = spec.require_count("n", 1);
  Eigen::Index total = 1;
  for (int d = 0; d < dim; ++d) total *= m;
  Matrix x(total, dim);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rest = idx;
    // Last coordinate varies fastest.
    for (int d = dim - 1; d >= 0; --d) {
      const Eigen::Index digit = rest % m;
      rest /= m;
      x(idx, d) = m == 1 ? 0.0 : static_cast<double>(digit) / static_cast<double>(m - 1);
    }
  }
  return x;
}

Matrix sphere_coords(const SpaceSpec& spec) {
  const int n = spec.require_count("n", 1);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  Matrix x(n, 3);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    x(i, 0) = r * std::cos(phi);
    x(i, 1) = r * std::sin(phi);
    x(i, 2) = z;
  }
  return x;
}

Matrix hyperbolic_coords(const SpaceSpec& spec) {
  const double radius = spec.param("radius", 1.0);
  const int rings = static_cast<int>(spec.param("rings", 4.0));
  const int sectors = static_cast<int>(spec.param("sectors", 8.0));
  Matrix x(1 + rings * sectors, 2);
  x.row(0) << 0.0, 0.0;
  for (int i = 1; i <= rings; ++i)
    for (int j = 0; j < sectors; ++j) {
      const Eigen::Index row = 1 + (i - 1) * sectors + j;
      x(row, 0) = radius * i / rings;
      x(row, 1) = 2.0 * M_PI * j / sectors;
    }
  return x;
}

Matrix cloud_coords(const SpaceSpec& spec) {
  if (!spec.coords.empty()) {
    const auto n = static_cast<Eigen::Index>(spec.coords.size());
    const auto dim = static_cast<Eigen::Index>(spec.coords.front().size());
    Matrix x(n, dim);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < dim; ++k) x(i, k) = spec.coords[i][k];
    return x;
  }
  const int n = spec.require_count("n", 1);
  const int dim = spec.require_count("dim", 1);
  const double extent = spec.param("extent", 1.0);
  CounterRng rng(spec.seed, 0x636c6f7564ULL);
  Matrix x(n, dim);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < dim; ++k) x(i, k) = rng.uniform(0.0, extent);
  return x;
}

double family_shape(const SpaceSpec& spec) {
  switch (spec.family) {
    case Family::CircleNet: return spec.param("circumference", 2.0 * M_PI);
    case Family::GridNet: return spec.param("p", 1.0);
    case Family::PointCloudLp: return spec.param("p", 2.0);
    case Family::SphereFibonacciNet: return spec.param("radius", 1.0);
    default: return 1.0;
  }
}

Matrix from_ambient(const AmbientNet& net) {
  const Eigen::Index n = net.coords.rows();
  Matrix dist = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i) {
      const double d = ambient_distance(net, i, net, j);
      dist(i, j) = d;
      dist(j, i) = d;
    }
  return dist;
}

Matrix circle_matrix(const SpaceSpec& spec) {
  const int n = spec.require_count("n", 1);
  const double circumference = spec.param("circumference", 2.0 * M_PI);
  // Index arithmetic keeps the matrix exactly circulant.
  Vector arc(n);
  for (int k = 0; k < n; ++k)
    arc(k) = transform(circumference * std::min(k, n - k) / n, spec.scale, spec.snowflake);
  Matrix dist(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) dist(i, j) = arc(std::abs(i - j));
  return dist;
}

Matrix bipartite_matrix(const SpaceSpec& spec, std::vector<std::string>& labels) {
  const int m = spec.require_count("m", 1);
  const int n = spec.require_count("n", 1);
  const double r = spec.param("r", 1.0);
  const double cross = transform(r, spec.scale, spec.snowflake);
  const double same = transform(2.0 * r, spec.scale, spec.snowflake);
  Matrix dist(m + n, m + n);
  for (int i = 0; i < m + n; ++i)
    for (int j = 0; j < m + n; ++j)
      dist(i, j) = i == j ? 0.0 : ((i < m) == (j < m) ? same : cross);
  for (int i = 0; i < m; ++i) labels.push_back("a" + std::to_string(i));
  for (int j = 0; j < n; ++j) labels.push_back("b" + std::to_string(j));
  return dist;
}

// Random agglomeration: clusters merge pairwise at strictly increasing
// heights; two leaves sit at distance twice the height of their lowest
// common ancestor.
Matrix ultrametric_matrix(const SpaceSpec& spec) {
  const int n = spec.require_count("n", 1);
  CounterRng rng(spec.seed, 0x756c747261ULL);
  std::vector<std::vector<int>> clusters(n);
  for (int i = 0; i < n; ++i) clusters[i] = {i};
  Matrix dist = Matrix::Zero(n, n);
  double height = 0.0;
  while (clusters.size() > 1) {
    height += rng.uniform(0.05, 1.0);
    const auto a = rng.below(clusters.size());
    auto b = rng.below(clusters.size() - 1);
    if (b >= a) ++b;
    const double d = transform(2.0 * height, spec.scale, spec.snowflake);
    for (int x : clusters[a])
      for (int y : clusters[b]) {
        dist(x, y) = d;
        dist(y, x) = d;
      }
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return dist;
}

// Random recursive tree: node i hangs from a uniformly chosen earlier node.
Matrix weighted_tree_matrix(const SpaceSpec& spec) {
  const int n = spec.require_count("n", 1);
  const double lo = spec.param("min_weight", 0.1);
  const double hi = spec.param("max_weight", 1.0);
  CounterRng rng(spec.seed, 0x74726565ULL);
  Matrix base = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const auto parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    const double w = rng.uniform(lo, hi);
    // Every earlier node lies outside the subtree of i, so paths go via the parent.
    for (int j = 0; j < i; ++j) {
      base(i, j) = base(parent, j) + w;
      base(j, i) = base(i, j);
    }
  }
  Matrix dist(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      dist(i, j) = i == j ? 0.0 : transform(base(i, j), spec.scale, spec.snowflake);
  return dist;
}

}  // namespace

AmbientNet ambient_net(const SpaceSpec& spec) {
  validate_spec(spec);
  AmbientNet net;
  net.family = spec.family;
  net.shape = family_shape(spec);
  net.scale = spec.scale;
  net.snowflake = spec.snowflake;
  switch (spec.family) {
    case Family::IntervalNet:
      net.coords = interval_coords(spec);
      break;
    case Family::CircleNet: {
      const int n = spec.require_count("n", 1);
      net.coords.resize(n, 1);
      for (int i = 0; i < n; ++i) net.coords(i, 0) = net.shape * i / n;
      break;
    }
    case Family::CantorNet: {
      const int k = spec.require_count("k", 0);
      const double length = spec.param("length", 1.0);
      const auto points = cantor_endpoints(k);
      const double unit = length / static_cast<double>(pow3(k));
      net.coords.resize(static_cast<Eigen::Index>(points.size()), 1);
      for (std::size_t i = 0; i < points.size(); ++i)
        net.coords(static_cast<Eigen::Index>(i), 0) = static_cast<double>(points[i]) * unit;
      break;
    }
    case Family::GridNet:
      net.coords = grid_coords(spec);
      break;
    case Family::SphereFibonacciNet:
      net.coords = sphere_coords(spec);
      break;
    case Family::HyperbolicDiskNet:
      net.coords = hyperbolic_coords(spec);
      break;
    case Family::PointCloudLp:
      net.coords = cloud_coords(spec);
      break;
    default:
      throw Error(ErrorKind::UnsupportedFamily,
                  std::string(to_string(spec.family)) + " has no ambient coordinates");
  }
  return net;
}

double ambient_distance(const AmbientNet& a, Eigen::Index i, const AmbientNet& b, Eigen::Index j) {
  return transform(base_distance(a.family, a.shape, a.coords, i, b.coords, j), a.scale, a.snowflake);
}

double net_hausdorff(const AmbientNet& a, const AmbientNet& b) {
  if (a.family != b.family || a.shape != b.shape || a.scale != b.scale ||
      a.snowflake != b.snowflake || a.coords.cols() != b.coords.cols())
    throw Error(ErrorKind::InvalidParams, "nets live in different ambient spaces");
  if (a.coords.rows() == 0 || b.coords.rows() == 0)
    throw Error(ErrorKind::EmptySubset, "Hausdorff distance needs nonempty nets");

  auto directed = [](const AmbientNet& from, const AmbientNet& to) {
    double sup = 0.0;
    for (Eigen::Index i = 0; i < from.coords.rows(); ++i) {
      double inf = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < to.coords.rows() && inf > sup; ++j)
        inf = std::min(inf, ambient_distance(from, i, to, j));
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

FiniteMetricSpace generate(const SpaceSpec& spec) {
  validate_spec(spec);
  std::vector<std::string> labels;
  Matrix dist;
  switch (spec.family) {
    case Family::CircleNet:
      dist = circle_matrix(spec);
      break;
    case Family::CompleteBipartite:
      dist = bipartite_matrix(spec, labels);
      break;
    case Family::UltrametricTree:
      dist = ultrametric_matrix(spec);
      break;
    case Family::WeightedTree:
      dist = weighted_tree_matrix(spec);
      break;
    default:
      dist = from_ambient(ambient_net(spec));
      break;
  }
  return FiniteMetricSpace(std::move(dist), std::move(labels), spec);
}

Vector reference_weights(const SpaceSpec& spec) {
  validate_spec(spec);
  auto voronoi_1d = [](const Matrix& x) {
    const Eigen::Index n = x.rows();
    Vector w = Vector::Zero(n);
    if (n == 1) {
      w(0) = 1.0;
      return w;
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x(a, 0) < x(b, 0); });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const double half = 0.5 * (x(order[k + 1], 0) - x(order[k], 0));
      w(order[k]) += half;
      w(order[k + 1]) += half;
    }
    return w;
  };

  Vector w;
  switch (spec.family) {
    case Family::IntervalNet:
      w = voronoi_1d(ambient_net(spec).coords);
      break;
    case Family::GridNet: {
      const Matrix x = grid_coords(spec);
      const int m = spec.require_count("m", 1);
      w = Vector::Ones(x.rows());
      if (m > 1)
        for (Eigen::Index i = 0; i < x.rows(); ++i)
          for (Eigen::Index k = 0; k < x.cols(); ++k)
            if (x(i, k) == 0.0 || x(i, k) == 1.0) w(i) *= 0.5;
      break;
    }
    case Family::HyperbolicDiskNet: {
      const Matrix x = hyperbolic_coords(spec);
      const int rings = static_cast<int>(spec.param("rings", 4.0));
      const int sectors = static_cast<int>(spec.param("sectors", 8.0));
      w = Vector::Ones(x.rows());
      if (rings > 0) {
        const double dr = spec.param("radius", 1.0) / rings;
        w(0) = 2.0 * M_PI * (std::cosh(0.5 * dr) - 1.0);
        for (Eigen::Index i = 1; i < x.rows(); ++i) {
          const double r = x(i, 0);
          const double outer = (i > (rings - 1) * sectors) ? r : r + 0.5 * dr;
          w(i) = 2.0 * M_PI / sectors * (std::cosh(outer) - std::cosh(r - 0.5 * dr));
        }
      }
      break;
    }
    default:
      w = Vector::Ones(static_cast<Eigen::Index>(generate(spec).size()));
      break;
  }
  return w / w.sum();
}

}  // namespace maglab
