#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maglab/magnitude.hpp"
#include "maglab/negative_type.hpp"
#include "maglab/space_spec.hpp"

namespace maglab {

// ---------------------------------------------------------------------------
// Net convergence studies

struct ConvergenceRecord {
  int level = 0;
  std::size_t points = 0;
  double hausdorff_gap = 0.0;  // to the finest net of the study
  std::optional<double> magnitude;
  std::optional<double> quadrature_bound;  // Rayleigh quotient of the cell measure
  double lambda_min = 0.0;
  std::string failure;
};

struct ConvergenceStudy {
  SpaceSpec family;
  std::string refinement_param;
  std::vector<ConvergenceRecord> records;
  double extrapolated_limit = 0.0;
  double fit_slope = 0.0;     // c in m(k) = m_inf - c * gap(k)
  double fit_residual = 0.0;  // max |residual| of the fit
  bool nested = false;
  bool monotone = false;
};

// Name of the parameter that refines a family (n, k or m); throws
// UnsupportedFamily for families without a refinement parameter.
std::string refinement_parameter(Family family);

// Whether the nets at the given levels are nested subsets of one another.
bool nested_levels(const SpaceSpec& family, std::span<const int> levels);

// Magnitude of the family's net at each level, with the Hausdorff gap to the
// finest net and an extrapolated limit fitted as m_inf - c * gap on the three
// finest levels. Levels whose net is not positive definite are recorded with
// a failure and skipped by the fit.
ConvergenceStudy approx_magnitude(const SpaceSpec& family, std::span<const int> levels,
                                  bool quadrature = false);

// ---------------------------------------------------------------------------
// Growth bounds

// Volume of the unit ball {|x|_p <= 1} in R^n: (2 Gamma(1+1/p))^n / Gamma(1+n/p).
double lp_ball_volume(int n, double p);

// vol(A) t^n / (Gamma(n/beta + 1) vol(B)) with beta = alpha * min(1, p).
double growth_lower_bound(int n, double p, double alpha, double vol_a, double t);

struct BoundCheck {
  double t = 0.0;
  double lower_bound = 0.0;
  std::optional<double> net_magnitude;
  double margin = 0.0;  // relative
  bool satisfied = false;
};

struct GrowthStudy {
  std::vector<BoundCheck> checks;
  std::optional<DimensionEstimate> dimension;
  std::string dimension_failure;
};

// Compares |t A_net| against the lower growth bound for a grid_net or
// interval_net template (the net of [0,1]^n or [0, length]). The margin is 5%
// plus the net-resolution deficit n (t h)^2 / 12 for spacing h. The dimension
// slope is estimated over the same t grid.
GrowthStudy growth_bound_study(const SpaceSpec& net_template, std::span<const double> t_grid);

// ---------------------------------------------------------------------------
// Counterexample experiments

struct ProductExperiment {
  StabilityReport stability;
  std::vector<double> failing_scales;  // lambda_min < -tau
  double min_lambda = 0.0;
  std::size_t points = 0;
};

// The 5-point set {0, +-e1, +-e2} of l1^2 and its l2 product with itself,
// scanned at t = 2^-k for k = 0..12.
FiniteMetricSpace product_counterexample_space();
ProductExperiment product_counterexample_experiment();

struct WitnessSearchSpec {
  double p = 2.0;  // may be +inf
  int dim = 3;
  int min_points = 5;
  int max_points = 8;
  std::vector<double> scales;  // empty: default_stability_scales()
};

struct Witness {
  std::vector<std::vector<double>> points;
  double t = 0.0;
  double lambda_min = 0.0;
  std::uint64_t trial = 0;
};

struct WitnessSearchResult {
  std::optional<Witness> witness;
  std::uint64_t trials = 0;
  std::uint64_t spaces_tested = 0;
  std::uint64_t scales_tested = 0;
  double smallest_lambda_seen = 0.0;
};

// Seeded random subsets of the unit cube of l_p^n, each scanned over the
// scale grid; returns the first subset and scale with lambda_min < -tau.
WitnessSearchResult witness_search(const WitnessSearchSpec& spec, std::uint64_t budget,
                                   std::uint64_t seed);

}  // namespace maglab
