#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cat0ot {

enum class ErrorKind {
  InvalidPoint,
  ParamOutOfRange,
  DegenerateTriangle,
  NotATriangle,
  OriginMismatch,
  ScheduleTooShort,
  UnsupportedConvexSet,
  NotExtendable,
  CapExceeded,
  InvalidSpace,
  PointNotOnGeodesic,
  UnsupportedRegion,
  BadEpsilon,
  ProbeAtCenter,
  InvalidMeasure,
  WeightMismatch,
  SupportTooLarge,
  UnsupportedShape,
  TooManyTuples,
  EmptySet,
  EmptyBall,
  BoundaryPoint,
  MapUndefined,
  NotDeterministic,
  SolverFailure,
  ConfigInvalid,
  IoFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` carries the
/// machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cat0ot
