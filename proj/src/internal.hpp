#pragma once

// Entry points shared between engine translation units; not installed.

#include "maglab/diversity.hpp"
#include "maglab/magnitude.hpp"

namespace maglab::detail {

MagnitudeReport weighting_from(const FiniteMetricSpace& space, const Matrix& zeta,
                               const SpectrumDiagnostics& diagnostics);

DiversityReport max_diversity_from(const Matrix& zeta, const SpectrumDiagnostics& diagnostics,
                                   const DiversityOptions& options);

}  // namespace maglab::detail
