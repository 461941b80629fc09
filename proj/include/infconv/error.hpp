#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infconv {

enum class ErrorCode {
  InvalidArgument,
  NotInvertible,
  Borderline,
  NotExpanding,
  DepthOutOfRange,
  DepthTooLarge,
  SizeMismatch,
  DimensionMismatch,
  ToleranceBreach,
  MissingSpectrum,
  CorrectionNotFound,
  LevelGapTooSmall,
  NoSupportBound,
  NotInDd,
  NotAdmissible,
  Schema,
  Overflow,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so
/// callers (and tests) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace infconv
