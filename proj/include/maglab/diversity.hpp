#pragma once

#include <cstddef>
#include <vector>

#include "maglab/magnitude.hpp"
#include "maglab/metric_space.hpp"

namespace maglab {

// Entries of the optimal measure above this count as support.
inline constexpr double kSupportThreshold = 1e-9;

struct DiversityOptions {
  double tol = 1e-8;
  int max_iters = 100000;
  // Every this many iterations the solver tries the exact minimiser on the
  // current support face (a positive solution of zeta_S x = 1); 0 disables.
  int face_solve_interval = 25;
  bool record_trace = false;
};

struct DiversityReport {
  double diversity = 0.0;    // 1/q(mu*), a certified lower bound on |A|_+
  double upper_bound = 0.0;  // 1/(q(mu*) - gap), +inf if q - gap <= 0
  double objective = 0.0;    // q(mu*) = mu*^T zeta mu*
  Vector measure;            // nonnegative, sums to 1
  std::vector<std::size_t> support;
  double fw_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // per iteration, when requested
};

// Maximum diversity by Frank-Wolfe with away steps on min mu^T zeta mu over
// the probability simplex, started from the uniform measure. Stops once the
// duality gap is at most tol * q. Throws IndefiniteForm when zeta has an
// eigenvalue below -tau (the problem is then nonconvex).
DiversityReport max_diversity(const FiniteMetricSpace& space, const DiversityOptions& options);
DiversityReport max_diversity(const FiniteMetricSpace& space, double tol = 1e-8,
                              int max_iters = 100000);

enum class PositivityCertificate { WeightingSign, DiversityAgreement };

std::string_view to_string(PositivityCertificate certificate);

struct PositivityVerdict {
  bool positively_weighted = false;
  PositivityCertificate certificate = PositivityCertificate::WeightingSign;
  double min_weight = 0.0;
  double magnitude = 0.0;
  double diversity = 0.0;
};

// Decides |A| = |A|_+ for a positive definite space. The weighting sign test
// decides unless the weighting is ill-conditioned, in which case agreement of
// magnitude and diversity within tol decides. Throws Inconsistent when the
// two tests disagree.
PositivityVerdict is_positively_weighted(const FiniteMetricSpace& space, double tol = 1e-7);

// |A|_+ <= exp(diam A) + 1e-9.
bool diversity_diameter_check(const FiniteMetricSpace& space);

}  // namespace maglab
