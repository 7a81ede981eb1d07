#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maglab/error.hpp"
#include "maglab/metric_space.hpp"

namespace maglab {

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

std::string_view to_string(Definiteness verdict);

// zeta(i, j) = exp(-d(i, j)); exactly 1 on the diagonal.
struct SimilarityMatrix {
  Matrix z;
};

SimilarityMatrix similarity(const FiniteMetricSpace& space);

struct SpectrumDiagnostics {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition_estimate = 0.0;  // lambda_max / lambda_min, +inf unless PD
  Definiteness verdict = Definiteness::Indefinite;
  double tolerance_used = 0.0;
  std::string method;  // "dense" or "lanczos"
  int iterations = 0;
};

// Band around zero inside which an eigenvalue is treated as zero.
double psd_tolerance(double lambda_max);
Definiteness classify(double lambda_min, double lambda_max);

// Largest size handled by the dense symmetric eigensolver; larger matrices
// use Lanczos iteration for the two extremal eigenvalues.
inline constexpr std::size_t kDenseEigenLimit = 2000;

// Extremal eigenvalues and PSD verdict of an arbitrary symmetric matrix.
SpectrumDiagnostics symmetric_spectrum(const Matrix& sym);

SpectrumDiagnostics spectrum_diagnostics(const FiniteMetricSpace& space);

class NotPositiveDefiniteError : public Error {
 public:
  explicit NotPositiveDefiniteError(const SpectrumDiagnostics& diagnostics);
  const SpectrumDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  SpectrumDiagnostics diagnostics_;
};

inline constexpr double kIllConditioned = 1e12;

struct MagnitudeReport {
  double magnitude = 0.0;
  Vector weighting;
  double residual = 0.0;  // max_i |(zeta w - 1)_i|
  bool positively_weighted = false;
  bool ill_conditioned = false;
  bool least_squares_fallback = false;
  SpectrumDiagnostics diagnostics;
};

// Solves zeta w = 1 by Cholesky with one step of iterative refinement.
// Throws NotPositiveDefiniteError unless the verdict is PositiveDefinite.
MagnitudeReport weighting(const FiniteMetricSpace& space);

double magnitude(const FiniteMetricSpace& space);

// (sum mu)^2 / (mu^T zeta mu). Throws DegenerateQuadraticForm when the
// denominator is within 1e-14 |mu|^2 of zero.
double rayleigh(const FiniteMetricSpace& space, const Vector& mu);

struct ScaleRecord {
  double t = 0.0;
  double lambda_min = 0.0;
  Definiteness verdict = Definiteness::Indefinite;
  std::optional<double> magnitude;
  std::optional<double> diversity;
  std::string failure;  // empty when every requested quantity was computed
};

struct ScaleSweep {
  std::vector<ScaleRecord> records;  // ascending in t
  std::size_t points = 0;
};

// Diagnostics, magnitude (PD scales only) and optionally maximum diversity of
// tA for every t in the grid. Failures are recorded per record.
ScaleSweep scale_sweep(const FiniteMetricSpace& space, std::span<const double> grid,
                       bool with_diversity = false);

struct DimensionEstimate {
  double slope = 0.0;
  double standard_error = 0.0;
  std::size_t records_used = 0;
};

// OLS slope of log magnitude against log t over records with t in [t_lo, t_hi].
// Throws InsufficientRecords below three usable records.
DimensionEstimate magnitude_dimension_estimate(const ScaleSweep& sweep, double t_lo, double t_hi);

}  // namespace maglab
