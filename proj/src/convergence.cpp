#include <algorithm>
#include <cmath>

#include "maglab/analysis.hpp"
#include "maglab/error.hpp"
#include "maglab/generators.hpp"
#include "maglab/parallel.hpp"

namespace maglab {
namespace {

SpaceSpec at_level(const SpaceSpec& family, const std::string& param, int level) {
  SpaceSpec spec = family;
  spec.params[param] = level;
  return spec;
}

bool divides(int a, int b) { return a > 0 && b % a == 0; }

}  // namespace

std::string refinement_parameter(Family family) {
  switch (family) {
    case Family::IntervalNet:
    case Family::CircleNet:
    case Family::SphereFibonacciNet:
      return "n";
    case Family::CantorNet:
      return "k";
    case Family::GridNet:
      return "m";
    case Family::HyperbolicDiskNet:
      return "rings";
    default:
      throw Error(ErrorKind::UnsupportedFamily,
                  std::string(to_string(family)) + " has no refinement parameter");
  }
}

bool nested_levels(const SpaceSpec& family, std::span<const int> levels) {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const int a = levels[i], b = levels[i + 1];
    bool ok = false;
    switch (family.family) {
      case Family::IntervalNet:
      case Family::GridNet:
        // Uniform and Chebyshev-Lobatto nodes on N intervals refine when N | M.
        ok = a == 1 || divides(a - 1, b - 1);
        break;
      case Family::CircleNet:
        ok = divides(a, b);
        break;
      case Family::CantorNet:
        ok = a <= b;
        break;
      case Family::HyperbolicDiskNet:
        ok = a == 0 || divides(a, b);
        break;
      default:
        ok = false;
        break;
    }
    if (!ok) return false;
  }
  return true;
}

ConvergenceStudy approx_magnitude(const SpaceSpec& family, std::span<const int> levels, bool quadrature) {
  if (levels.empty()) throw Error(ErrorKind::InvalidParams, "no levels given");
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i] >= levels[i + 1]) throw Error(ErrorKind::InvalidParams, "levels must be increasing");

  ConvergenceStudy study;
  study.family = family;
  study.refinement_param = refinement_parameter(family.family);
  study.nested = nested_levels(family, levels);

  const std::size_t count = levels.size();
  const AmbientNet finest = ambient_net(at_level(family, study.refinement_param, levels.back()));
  study.records.resize(count);
  parallel_for(count, [&](std::size_t k) {
    ConvergenceRecord& rec = study.records[k];
    rec.level = levels[k];
    const SpaceSpec spec = at_level(family, study.refinement_param, levels[k]);
    const FiniteMetricSpace space = generate(spec);
    rec.points = space.size();
    rec.hausdorff_gap = k + 1 == count ? 0.0 : net_hausdorff(ambient_net(spec), finest);
    try {
      const MagnitudeReport report = weighting(space);
      rec.lambda_min = report.diagnostics.lambda_min;
      rec.magnitude = report.magnitude;
      if (quadrature) rec.quadrature_bound = rayleigh(space, reference_weights(spec));
    } catch (const NotPositiveDefiniteError& e) {
      rec.lambda_min = e.diagnostics().lambda_min;
      rec.failure = std::string(to_string(ErrorKind::LevelNotPD)) + ": " + e.what();
    } catch (const Error& e) {
      rec.failure = e.what();
    }
  });

  std::vector<const ConvergenceRecord*> ok;
  for (const auto& rec : study.records)
    if (rec.magnitude) ok.push_back(&rec);

  study.monotone = true;
  for (std::size_t i = 0; i + 1 < ok.size(); ++i)
    if (*ok[i + 1]->magnitude < *ok[i]->magnitude - 1e-10) study.monotone = false;

  if (ok.empty()) return study;

  // m(k) = m_inf - c * gap(k) on the three finest successful levels.
  const std::size_t first = ok.size() > 3 ? ok.size() - 3 : 0;
  const auto k = static_cast<double>(ok.size() - first);
  double mg = 0.0, mm = 0.0;
  for (std::size_t i = first; i < ok.size(); ++i) {
    mg += ok[i]->hausdorff_gap;
    mm += *ok[i]->magnitude;
  }
  mg /= k;
  mm /= k;
  double sgg = 0.0, sgm = 0.0;
  for (std::size_t i = first; i < ok.size(); ++i) {
    sgg += (ok[i]->hausdorff_gap - mg) * (ok[i]->hausdorff_gap - mg);
    sgm += (ok[i]->hausdorff_gap - mg) * (*ok[i]->magnitude - mm);
  }
  const double slope = sgg > 0.0 ? sgm / sgg : 0.0;
  study.fit_slope = -slope;
  study.extrapolated_limit = mm - slope * mg;
  for (std::size_t i = first; i < ok.size(); ++i) {
    const double fitted = study.extrapolated_limit + slope * ok[i]->hausdorff_gap;
    study.fit_residual = std::max(study.fit_residual, std::abs(*ok[i]->magnitude - fitted));
  }
  return study;
}

}  // namespace maglab
