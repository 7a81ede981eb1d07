#include "maglab/negative_type.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "maglab/error.hpp"
#include "maglab/parallel.hpp"

namespace maglab {

std::string_view to_string(Stability classification) {
  switch (classification) {
    case Stability::StablyPositiveDefinite: return "StablyPositiveDefinite";
    case Stability::NotStablyPD: return "NotStablyPD";
    case Stability::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

NegativeTypeReport negative_type_test(const FiniteMetricSpace& space, std::size_t basepoint) {
  if (basepoint >= space.size()) throw Error(ErrorKind::IndexOutOfRange, "basepoint out of range");
  NegativeTypeReport report;
  report.basepoint = basepoint;
  const auto n = static_cast<Eigen::Index>(space.size());
  if (n == 1) {
    report.negative_type = true;
    report.tolerance_used = psd_tolerance(0.0);
    return report;
  }

  // Gram matrix on the points other than the basepoint; the basepoint's own
  // row and column vanish identically.
  const auto b = static_cast<Eigen::Index>(basepoint);
  std::vector<Eigen::Index> others;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != b) others.push_back(i);
  const auto m = static_cast<Eigen::Index>(others.size());
  const Matrix& d = space.dist();
  Matrix gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index c = 0; c < m; ++c)
      gram(a, c) = 0.5 * (d(b, others[a]) + d(b, others[c]) - d(others[a], others[c]));

  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::EigensolverFailure, "Gram eigensolver did not converge");
  report.gram_lambda_min = solver.eigenvalues()(0);
  report.tolerance_used = psd_tolerance(solver.eigenvalues()(m - 1));
  report.negative_type = report.gram_lambda_min >= -report.tolerance_used;

  if (!report.negative_type) {
    // x = (v on the other points, -sum v at the basepoint) has sum zero and
    // x^T D x = -2 v^T G v > 0.
    const Vector v = solver.eigenvectors().col(0);
    Vector x = Vector::Zero(n);
    for (Eigen::Index a = 0; a < m; ++a) x(others[a]) = v(a);
    x(b) = -v.sum();
    x /= x.norm();
    x(b) = 0.0;
    x(b) = -x.sum();
    report.witness_value = x.dot(d * x);
    report.witness = std::move(x);
  }
  return report;
}

std::vector<double> default_stability_scales() {
  std::vector<double> scales;
  for (int k = -10; k <= 4; ++k) scales.push_back(std::ldexp(1.0, k));
  return scales;
}

StabilityReport stability_scan(const FiniteMetricSpace& space, std::span<const double> scales) {
  std::vector<double> ts(scales.begin(), scales.end());
  for (double t : ts)
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::NonpositiveScale, "scales must be positive");
  std::sort(ts.begin(), ts.end());

  StabilityReport report;
  report.records.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t k) {
    const FiniteMetricSpace scaled = scale_space(space, ts[k]);
    const SpectrumDiagnostics diag = spectrum_diagnostics(scaled);
    report.records[k] = {ts[k], diag.lambda_min, diag.tolerance_used, diag.verdict};
  });
  report.negative_type = negative_type_test(space);

  for (const auto& rec : report.records)
    if (rec.verdict == Definiteness::Indefinite) {
      report.first_failing_scale = rec.t;
      break;
    }

  const bool all_pd = std::all_of(report.records.begin(), report.records.end(), [](const auto& rec) {
    return rec.verdict == Definiteness::PositiveDefinite;
  });
  // Scales inside the PSD band are surfaced as Undetermined, not rounded up.
  if (report.first_failing_scale) {
    report.classification = Stability::NotStablyPD;
  } else if (all_pd && report.negative_type.negative_type) {
    report.classification = Stability::StablyPositiveDefinite;
  } else {
    report.classification = Stability::Undetermined;
  }
  return report;
}

StabilityReport stability_scan(const FiniteMetricSpace& space) {
  const auto scales = default_stability_scales();
  return stability_scan(space, scales);
}

}  // namespace maglab
