#include "camsa/error.hpp"

namespace camsa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::WrongKeypointCount: return "WrongKeypointCount";
    case ErrorCode::NonPositiveFps: return "NonPositiveFps";
    case ErrorCode::NonMonotonicFrames: return "NonMonotonicFrames";
    case ErrorCode::ViewMismatch: return "ViewMismatch";
    case ErrorCode::FpsMismatch: return "FpsMismatch";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingPhase: return "MissingPhase";
    case ErrorCode::OutOfOrder: return "OutOfOrder";
    case ErrorCode::NoKickDetected: return "NoKickDetected";
    case ErrorCode::PhaseMismatch: return "PhaseMismatch";
    case ErrorCode::NoReversalFound: return "NoReversalFound";
    case ErrorCode::NoBallObservations: return "NoBallObservations";
    case ErrorCode::MissingRect: return "MissingRect";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::EmptyCohort: return "EmptyCohort";
    case ErrorCode::InvalidScript: return "InvalidScript";
    case ErrorCode::PathOutOfBounds: return "PathOutOfBounds";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace camsa
