#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maglab/magnitude.hpp"
#include "maglab/metric_space.hpp"

namespace maglab {

struct NegativeTypeReport {
  bool negative_type = false;
  double gram_lambda_min = 0.0;
  double tolerance_used = 0.0;
  // Mean-zero x with x^T D x > 0, present iff negative_type is false.
  std::optional<Vector> witness;
  double witness_value = 0.0;  // x^T D x for the witness
  std::size_t basepoint = 0;
};

// Negative type test: the space is of negative type iff the Gram matrix
// G(i,j) = (d(b,i) + d(b,j) - d(i,j)) / 2 built from the distances (not their
// squares) is positive semidefinite, i.e. the half-snowflake embeds in a
// Hilbert space. Pass the squared metric to test plain Hilbert embeddability.
NegativeTypeReport negative_type_test(const FiniteMetricSpace& space, std::size_t basepoint = 0);

enum class Stability { StablyPositiveDefinite, NotStablyPD, Undetermined };

std::string_view to_string(Stability classification);

struct StabilityRecord {
  double t = 0.0;
  double lambda_min = 0.0;
  double tolerance = 0.0;
  Definiteness verdict = Definiteness::Indefinite;
};

// Conclusions concern the sampled finite space only.
struct StabilityReport {
  std::vector<StabilityRecord> records;  // ascending in t
  Stability classification = Stability::Undetermined;
  NegativeTypeReport negative_type;
  std::optional<double> first_failing_scale;
};

// 2^k for k = -10..4.
std::vector<double> default_stability_scales();

StabilityReport stability_scan(const FiniteMetricSpace& space, std::span<const double> scales);
StabilityReport stability_scan(const FiniteMetricSpace& space);

}  // namespace maglab
