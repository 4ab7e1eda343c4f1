#pragma once

#include <stdexcept>
#include <string>

namespace somnb {

enum class ErrorCode {
  TooShort,
  ZeroBaseYear,
  YearMismatch,
  ZeroTotal,
  MissingSector,
  InvalidPanel,
  ZeroVariance,
  MalformedRow,
  DimensionMismatch,
  EmptyInput,
  LengthMismatch,
  NonFinite,
  UnknownLabel,
  TooManyLabels,
  InvalidConfig,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for all library errors; the code is what tests
/// and callers branch on, the message carries context (line numbers etc.).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace somnb
