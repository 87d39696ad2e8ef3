#pragma once

#include <stdexcept>
#include <string>

namespace modblob {

enum class ErrorCode {
  MalformedInput,
  BaseMismatch,
  OrientationInconsistent,
  UnorientedInput,
  NotFillable,
  NotEmbedded,
  InvalidDiagram,
  IllegalMove,
  NormalizationStuck,
  DepthExceeded,
  TripleRootDetected,
  NonTransversalDiscriminantCrossing,
  BasepointViolation,
  PrecisionExhausted,
  GenericityViolation,
  EventCollision,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures onto stable exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace modblob
