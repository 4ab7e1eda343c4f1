#include "somnb/error.hpp"

namespace somnb {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ZeroBaseYear: return "ZeroBaseYear";
    case ErrorCode::YearMismatch: return "YearMismatch";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::MissingSector: return "MissingSector";
    case ErrorCode::InvalidPanel: return "InvalidPanel";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::TooManyLabels: return "TooManyLabels";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace somnb
