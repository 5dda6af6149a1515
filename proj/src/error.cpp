#include "cat0ot/error.hpp"

namespace cat0ot {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::NotATriangle: return "NotATriangle";
    case ErrorKind::OriginMismatch: return "OriginMismatch";
    case ErrorKind::ScheduleTooShort: return "ScheduleTooShort";
    case ErrorKind::UnsupportedConvexSet: return "UnsupportedConvexSet";
    case ErrorKind::NotExtendable: return "NotExtendable";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidSpace: return "InvalidSpace";
    case ErrorKind::PointNotOnGeodesic: return "PointNotOnGeodesic";
    case ErrorKind::UnsupportedRegion: return "UnsupportedRegion";
    case ErrorKind::BadEpsilon: return "BadEpsilon";
    case ErrorKind::ProbeAtCenter: return "ProbeAtCenter";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::TooManyTuples: return "TooManyTuples";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::EmptyBall: return "EmptyBall";
    case ErrorKind::BoundaryPoint: return "BoundaryPoint";
    case ErrorKind::MapUndefined: return "MapUndefined";
    case ErrorKind::NotDeterministic: return "NotDeterministic";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace cat0ot
