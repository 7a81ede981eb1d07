#pragma once

#include <optional>

#include "maglab/metric_space.hpp"
#include "maglab/space_spec.hpp"

namespace maglab {

// Builds the space described by spec. Deterministic: an identical spec
// (including seed) yields a bit-identical distance matrix.
FiniteMetricSpace generate(const SpaceSpec& spec);

// Points of a geometric family together with the family's ambient metric,
// so that nets of the same family at different resolutions can be compared.
// Coordinates are rows; their meaning depends on the family (position on a
// line, arc position, lattice point, unit vector, polar pair).
struct AmbientNet {
  Family family = Family::IntervalNet;
  Matrix coords;
  double shape = 1.0;     // circumference, radius or lp exponent, per family
  double scale = 1.0;     // spec.scale
  double snowflake = 1.0; // spec.snowflake
};

// Geometric families only; tree and graph families throw UnsupportedFamily.
AmbientNet ambient_net(const SpaceSpec& spec);

// Distance between point i of a and point j of b in the shared ambient metric
// (including the spec's scale and snowflake). Both nets must come from the
// same family with the same shape parameters.
double ambient_distance(const AmbientNet& a, Eigen::Index i, const AmbientNet& b, Eigen::Index j);

// Hausdorff distance between two nets of the same ambient space.
double net_hausdorff(const AmbientNet& a, const AmbientNet& b);

// Cell measures of a net (Voronoi lengths on the line, product cells on
// grids, uniform mass elsewhere), normalised to total mass 1.
Vector reference_weights(const SpaceSpec& spec);

}  // namespace maglab
