#include "maglab/magnitude.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal.hpp"
#include "maglab/diversity.hpp"
#include "maglab/parallel.hpp"

namespace maglab {
namespace {

std::string describe(const SpectrumDiagnostics& d) {
  std::ostringstream os;
  os.precision(6);
  os << "similarity matrix is " << to_string(d.verdict) << " (lambda_min = " << d.lambda_min
     << ", tolerance = " << d.tolerance_used << ")";
  return os.str();
}

Matrix similarity_matrix(const Matrix& dist) {
  Matrix z = (-dist.array()).exp().matrix();
  z.diagonal().setOnes();
  return z;
}

}  // namespace

NotPositiveDefiniteError::NotPositiveDefiniteError(const SpectrumDiagnostics& diagnostics)
    : Error(ErrorKind::NotPositiveDefinite, describe(diagnostics)), diagnostics_(diagnostics) {}

SimilarityMatrix similarity(const FiniteMetricSpace& space) { return {similarity_matrix(space.dist())}; }

SpectrumDiagnostics spectrum_diagnostics(const FiniteMetricSpace& space) {
  return symmetric_spectrum(similarity_matrix(space.dist()));
}

namespace detail {

MagnitudeReport weighting_from(const FiniteMetricSpace& space, const Matrix& zeta,
                               const SpectrumDiagnostics& diagnostics) {
  if (diagnostics.verdict != Definiteness::PositiveDefinite) throw NotPositiveDefiniteError(diagnostics);

  MagnitudeReport report;
  report.diagnostics = diagnostics;
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(space.size()));

  Eigen::LLT<Matrix> llt(zeta);
  Vector w;
  if (llt.info() == Eigen::Success) {
    w = llt.solve(ones);
    w += llt.solve(ones - zeta * w);
  } else {
    // Only reachable at the edge of the PD band.
    w = zeta.completeOrthogonalDecomposition().solve(ones);
    report.least_squares_fallback = true;
  }

  report.weighting = std::move(w);
  report.magnitude = report.weighting.sum();
  report.residual = (zeta * report.weighting - ones).cwiseAbs().maxCoeff();
  const double tau_w = 1e-10 * report.weighting.cwiseAbs().maxCoeff();
  report.positively_weighted = report.weighting.minCoeff() >= -tau_w;
  report.ill_conditioned = diagnostics.condition_estimate > kIllConditioned;
  return report;
}

}  // namespace detail

MagnitudeReport weighting(const FiniteMetricSpace& space) {
  const Matrix zeta = similarity_matrix(space.dist());
  return detail::weighting_from(space, zeta, symmetric_spectrum(zeta));
}

double magnitude(const FiniteMetricSpace& space) { return weighting(space).magnitude; }

double rayleigh(const FiniteMetricSpace& space, const Vector& mu) {
  if (mu.size() != static_cast<Eigen::Index>(space.size()))
    throw Error(ErrorKind::InvalidParams, "measure length does not match the space");
  const Matrix zeta = similarity_matrix(space.dist());
  const double form = mu.dot(zeta * mu);
  if (!(std::abs(form) > 1e-14 * mu.squaredNorm()))
    throw Error(ErrorKind::DegenerateQuadraticForm, "mu^T zeta mu vanishes");
  const double total = mu.sum();
  return total * total / form;
}

ScaleSweep scale_sweep(const FiniteMetricSpace& space, std::span<const double> grid, bool with_diversity) {
  if (grid.empty()) throw Error(ErrorKind::InvalidParams, "scale grid is empty");
  std::vector<double> ts(grid.begin(), grid.end());
  for (double t : ts)
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::NonpositiveScale, "scales must be positive");
  std::sort(ts.begin(), ts.end());

  ScaleSweep sweep;
  sweep.points = space.size();
  sweep.records.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t k) {
    ScaleRecord& rec = sweep.records[k];
    rec.t = ts[k];
    try {
      const Matrix zeta = similarity_matrix(ts[k] * space.dist());
      const SpectrumDiagnostics diag = symmetric_spectrum(zeta);
      rec.lambda_min = diag.lambda_min;
      rec.verdict = diag.verdict;
      if (diag.verdict == Definiteness::PositiveDefinite) {
        rec.magnitude = detail::weighting_from(space, zeta, diag).magnitude;
      } else {
        rec.failure = "magnitude refused: " + std::string(to_string(diag.verdict));
      }
      if (with_diversity) {
        if (diag.verdict == Definiteness::Indefinite) {
          if (rec.failure.empty()) rec.failure = "diversity refused: Indefinite";
        } else {
          const DiversityReport div = detail::max_diversity_from(zeta, diag, DiversityOptions{});
          rec.diversity = div.diversity;
          if (!div.converged && rec.failure.empty()) rec.failure = "diversity did not converge";
        }
      }
    } catch (const Error& e) {
      rec.failure = e.what();
    }
  });
  return sweep;
}

DimensionEstimate magnitude_dimension_estimate(const ScaleSweep& sweep, double t_lo, double t_hi) {
  std::vector<double> x, y;
  for (const auto& rec : sweep.records)
    if (rec.magnitude && rec.t >= t_lo && rec.t <= t_hi && *rec.magnitude > 0.0) {
      x.push_back(std::log(rec.t));
      y.push_back(std::log(*rec.magnitude));
    }
  if (x.size() < 3)
    throw Error(ErrorKind::InsufficientRecords,
                "need at least 3 magnitudes inside the window, found " + std::to_string(x.size()));

  const auto k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::InsufficientRecords, "window records share one scale");

  DimensionEstimate est;
  est.slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - my - est.slope * (x[i] - mx);
    ssr += r * r;
  }
  est.standard_error = std::sqrt(ssr / (k - 2.0) / sxx);
  est.records_used = x.size();
  return est;
}

}  // namespace maglab
