#pragma once

#include <vector>

#include "maglab/metric_space.hpp"

namespace maglab {

// Frequency grid 0, step, 2 step, ..., omega_max (the transforms here are even).
struct FrequencyGrid {
  double omega_max = 10.0;
  double step = 0.05;

  std::vector<double> samples() const;
};

struct FourierReport {
  double p = 0.0;
  std::vector<double> omega;
  std::vector<double> values;  // gamma_p hat on the grid
  bool positive = false;
  bool radially_decreasing = false;
  double fitted_c = 0.0;        // min over the grid of value * (1 + omega)^(1 + p)
  double tail_bound = 0.0;      // 2 * int_L^inf exp(-x^p) dx
  double error_estimate = 0.0;  // tail bound plus max |T_h - T_2h|
};

// Upper bound on int_L^inf exp(-x^p) dx.
double stretched_exponential_tail(double p, double length);

// Transform of exp(-|x|^p) under f^(w) = int f(x) exp(-2 pi i x w) dx,
// by the trapezoid rule on [0, L] with N intervals (cosine form). Throws
// QuadratureDivergence when the truncated tail exceeds tail_tol.
FourierReport gamma_hat_1d(double p, double length = 40.0, int intervals = 1 << 16,
                           const FrequencyGrid& grid = {}, double tail_tol = 1e-8);

// Transform of the unit bump exp(1 / (x^2 - 1)) on (-1, 1), normalised to
// integral one.
double bump_hat(double omega);

struct UpperBoundReport {
  double bound = 0.0;
  double argmax_omega = 0.0;
  double error_estimate = 0.0;
  double beta = 0.0;  // exponent of the 1-D kernel exp(-|x|^beta)
  double mollifier_width = 0.0;
  std::size_t grid_points = 0;
};

// Fourier upper bound for the magnitude of [0, ell] in (l_p^1)^alpha:
// sup over a frequency grid of psi^ / F^, where psi is the indicator of
// [-ell - e, ell + e] mollified by a bump of radius e = (radius - ell) / 2,
// so psi = 1 on [-ell, ell] and vanishes outside [-radius, radius], and F^ is
// the transform of exp(-|x|^(alpha min(1, p))).
UpperBoundReport fourier_upper_bound_1d(double ell, double p, double alpha, double radius);

}  // namespace maglab
