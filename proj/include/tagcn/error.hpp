#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tagcn {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  DuplicateEdge,
  IsolatedVertex,
  NonFiniteValue,
  NegativeWeight,
  NonPositiveDegree,
  DirectedLaplacian,
  DimensionMismatch,
  PathLengthTooLarge,
  NotDiagonalizable,
  TooLarge,
  NotStronglyConnected,
  DegenerateDominantEigenvalue,
  ZeroProjection,
  WrongOperatorKind,
  InvalidRate,
  EmptyMask,
  StaleState,
  ShapeMismatch,
  EmptyList,
  FormatError,
  SplitOverlap,
  LabelOutOfRange,
  EmptySplit,
  StatMismatch,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace tagcn
