#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "maglab/analysis.hpp"
#include "maglab/diversity.hpp"
#include "maglab/fourier.hpp"
#include "maglab/magnitude.hpp"
#include "maglab/metric_space.hpp"
#include "maglab/negative_type.hpp"
#include "maglab/space_spec.hpp"

namespace maglab {

using nlohmann::json;

// Version tag written into every report document.
inline constexpr const char* kSchemaVersion = "maglab.report.v1";

// Headerless CSV, one row per point. Throws Parse / NonSquareMatrix /
// NonFiniteEntry.
Matrix parse_matrix_csv(std::istream& in);
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& out, const Matrix& m);

// Loads a distance matrix and runs validate_metric; refuses (InvalidMetric)
// unless force is set.
FiniteMetricSpace load_space_csv(const std::string& path, bool force = false);

SpaceSpec spec_from_json(const json& j);
json spec_to_json(const SpaceSpec& spec);
SpaceSpec read_spec_json(const std::string& path);

json to_json(const ValidationReport& r);
json to_json(const SpectrumDiagnostics& d);
json to_json(const MagnitudeReport& r);
json to_json(const ScaleSweep& s);
json to_json(const DimensionEstimate& e);
json to_json(const DiversityReport& r);
json to_json(const PositivityVerdict& v);
json to_json(const NegativeTypeReport& r);
json to_json(const StabilityReport& r);
json to_json(const ConvergenceStudy& s);
json to_json(const BoundCheck& b);
json to_json(const GrowthStudy& g);
json to_json(const FourierReport& r);
json to_json(const UpperBoundReport& r);
json to_json(const ProductExperiment& e);
json to_json(const WitnessSearchResult& r);

// Plot-ready tables.
void write_sweep_csv(std::ostream& out, const ScaleSweep& sweep);          // t,lambda_min,magnitude,diversity
void write_study_csv(std::ostream& out, const ConvergenceStudy& study);    // level,value,bound,gap
void write_growth_csv(std::ostream& out, const GrowthStudy& study);        // t,value,bound,gap
void write_fourier_csv(std::ostream& out, const FourierReport& report);    // omega,value,bound,gap

}  // namespace maglab
