#include <cmath>

#include "maglab/analysis.hpp"
#include "maglab/error.hpp"
#include "maglab/generators.hpp"

namespace maglab {

double lp_ball_volume(int n, double p) {
  if (n < 1 || !(p > 0.0)) throw Error(ErrorKind::InvalidParams, "need n >= 1 and p > 0");
  if (std::isinf(p)) return std::ldexp(1.0, n);
  return std::exp(n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) - std::lgamma(1.0 + n / p));
}

double growth_lower_bound(int n, double p, double alpha, double vol_a, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidParams, "alpha must lie in (0, 1]");
  if (!(vol_a > 0.0) || !std::isfinite(vol_a)) throw Error(ErrorKind::InvalidParams, "vol(A) must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidParams, "t must be nonnegative");
  const double ball = lp_ball_volume(n, p);
  const double beta = alpha * std::min(1.0, p);
  return vol_a * std::pow(t, n) / (std::tgamma(n / beta + 1.0) * ball);
}

GrowthStudy growth_bound_study(const SpaceSpec& net_template, std::span<const double> t_grid) {
  int dim = 1;
  double p = 2.0, vol = 1.0, spacing = 0.0;
  switch (net_template.family) {
    case Family::GridNet: {
      dim = net_template.require_count("n", 1);
      p = net_template.param("p", 1.0);
      const int m = net_template.require_count("m", 1);
      spacing = m > 1 ? 1.0 / (m - 1) : 0.0;
      break;
    }
    case Family::IntervalNet: {
      vol = net_template.param("length", 1.0);
      const int n = net_template.require_count("n", 1);
      spacing = n > 1 ? vol / (n - 1) : 0.0;
      if (net_template.param("chebyshev", 0.0) != 0.0)
        spacing = n > 1 ? vol * std::sin(0.5 * M_PI / (n - 1)) : 0.0;
      break;
    }
    default:
      throw Error(ErrorKind::UnsupportedFamily, "growth study needs a grid_net or interval_net template");
  }
  if (net_template.scale != 1.0) throw Error(ErrorKind::InvalidParams, "template scale must be 1");
  const double alpha = net_template.snowflake;
  // Nearest-neighbour distance of the net in its own metric.
  const double step = std::pow(std::pow(spacing, std::min(1.0, p)), alpha);

  const FiniteMetricSpace net = generate(net_template);
  const ScaleSweep sweep = scale_sweep(net, t_grid);

  GrowthStudy study;
  for (const auto& rec : sweep.records) {
    BoundCheck check;
    check.t = rec.t;
    check.lower_bound = growth_lower_bound(dim, p, alpha, vol, rec.t);
    check.margin = 0.05 + dim * (rec.t * step) * (rec.t * step) / 12.0;
    check.net_magnitude = rec.magnitude;
    check.satisfied = rec.magnitude && *rec.magnitude >= check.lower_bound * (1.0 - check.margin);
    study.checks.push_back(check);
  }
  try {
    study.dimension = magnitude_dimension_estimate(sweep, sweep.records.front().t, sweep.records.back().t);
  } catch (const Error& e) {
    study.dimension_failure = e.what();
  }
  return study;
}

}  // namespace maglab
