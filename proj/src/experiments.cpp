#include <algorithm>
#include <cmath>
#include <limits>

#include "maglab/analysis.hpp"
#include "maglab/error.hpp"
#include "maglab/generators.hpp"
#include "maglab/rng.hpp"

namespace maglab {

FiniteMetricSpace product_counterexample_space() {
  SpaceSpec cross;
  cross.family = Family::PointCloudLp;
  cross.params["p"] = 1.0;
  cross.coords = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const FiniteMetricSpace a(generate(cross).dist(), {"0", "+e1", "-e1", "+e2", "-e2"});
  return lp_product(a, a, 2.0);
}

ProductExperiment product_counterexample_experiment() {
  ProductExperiment experiment;
  const FiniteMetricSpace space = product_counterexample_space();
  experiment.points = space.size();
  std::vector<double> scales;
  for (int k = 0; k <= 12; ++k) scales.push_back(std::ldexp(1.0, -k));
  experiment.stability = stability_scan(space, scales);
  experiment.min_lambda = experiment.stability.records.front().lambda_min;
  for (const auto& rec : experiment.stability.records) {
    experiment.min_lambda = std::min(experiment.min_lambda, rec.lambda_min);
    if (rec.verdict == Definiteness::Indefinite) experiment.failing_scales.push_back(rec.t);
  }
  return experiment;
}

WitnessSearchResult witness_search(const WitnessSearchSpec& spec, std::uint64_t budget, std::uint64_t seed) {
  if (!(spec.p > 0.0)) throw Error(ErrorKind::InvalidParams, "p must be positive");
  if (spec.dim < 1 || spec.min_points < 2 || spec.max_points < spec.min_points)
    throw Error(ErrorKind::InvalidParams, "need dim >= 1 and 2 <= min_points <= max_points");
  const std::vector<double> scales = spec.scales.empty() ? default_stability_scales() : spec.scales;

  WitnessSearchResult result;
  result.smallest_lambda_seen = std::numeric_limits<double>::infinity();
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    ++result.trials;
    CounterRng rng(seed, trial);
    const auto span = static_cast<std::uint64_t>(spec.max_points - spec.min_points + 1);
    const int count = spec.min_points + static_cast<int>(rng.below(span));

    SpaceSpec cloud;
    cloud.family = Family::PointCloudLp;
    cloud.params["p"] = spec.p;
    cloud.coords.assign(count, std::vector<double>(spec.dim));
    for (auto& point : cloud.coords)
      for (double& x : point) x = rng.uniform();

    std::optional<FiniteMetricSpace> space;
    try {
      space.emplace(generate(cloud));
    } catch (const Error&) {
      continue;  // coincident points
    }
    ++result.spaces_tested;
    for (double t : scales) {
      ++result.scales_tested;
      const SpectrumDiagnostics diag = spectrum_diagnostics(scale_space(*space, t));
      result.smallest_lambda_seen = std::min(result.smallest_lambda_seen, diag.lambda_min);
      if (diag.verdict == Definiteness::Indefinite) {
        result.witness = Witness{cloud.coords, t, diag.lambda_min, trial};
        return result;
      }
    }
  }
  return result;
}

}  // namespace maglab
