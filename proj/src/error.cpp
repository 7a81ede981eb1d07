#include "maglab/error.hpp"

namespace maglab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::InvalidMetric: return "InvalidMetric";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DegenerateQuadraticForm: return "DegenerateQuadraticForm";
    case ErrorKind::InsufficientRecords: return "InsufficientRecords";
    case ErrorKind::IndefiniteForm: return "IndefiniteForm";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::LevelNotPD: return "LevelNotPD";
    case ErrorKind::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorKind::NegativeRatioOnly: return "NegativeRatioOnly";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace maglab
