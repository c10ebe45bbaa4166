#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbkrg {

enum class ErrorCode {
  LoopEdge,
  VertexOutOfRange,
  Disconnected,
  TooManyVertices,
  BadParameters,
  EmptyLandmarkSet,
  SameVertex,
  SizeCapExceeded,
  PairsOverlap,
  AlphaCapExceeded,
  CycleTooSmall,
  UndefinedForLoser,
  NotCovered,
  NotATree,
  HypothesesViolated,
  ParseError,
  IOFailure,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mbkrg
