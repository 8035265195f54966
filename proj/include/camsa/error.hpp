#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace camsa {

enum class ErrorCode {
  MalformedFile,
  WrongKeypointCount,
  NonPositiveFps,
  NonMonotonicFrames,
  ViewMismatch,
  FpsMismatch,
  DegeneratePolygon,
  NonPositiveRadius,
  SeriesTooShort,
  InvalidArgument,
  DimensionMismatch,
  MissingPhase,
  OutOfOrder,
  NoKickDetected,
  PhaseMismatch,
  NoReversalFound,
  NoBallObservations,
  MissingRect,
  NegativeTime,
  EmptyCohort,
  InvalidScript,
  PathOutOfBounds,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (CLI exit codes, report metadata) can branch without string parsing.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int action = 0)
      : std::runtime_error(what), code_(code), action_(action) {}

  ErrorCode code() const noexcept { return code_; }
  // Action id for MissingPhase / OutOfOrder, 0 otherwise.
  int action() const noexcept { return action_; }

 private:
  ErrorCode code_;
  int action_;
};

}  // namespace camsa
