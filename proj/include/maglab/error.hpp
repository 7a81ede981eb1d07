#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maglab {

enum class ErrorKind {
  NonSquareMatrix,
  NonFiniteEntry,
  InvalidMetric,
  IndexOutOfRange,
  UnsupportedFamily,
  InvalidParams,
  NonpositiveScale,
  ExponentOutOfRange,
  EmptySubset,
  EigensolverFailure,
  NotPositiveDefinite,
  DegenerateQuadraticForm,
  InsufficientRecords,
  IndefiniteForm,
  Inconsistent,
  LevelNotPD,
  QuadratureDivergence,
  NegativeRatioOnly,
  Io,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Base of every domain error raised by the library. The kind is stable and
// machine-readable; the message carries diagnostics for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace maglab
