#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aka {

enum class ErrorCode {
  NonPrimeModulus,
  CoefficientOutOfRange,
  SingularCurve,
  GeneratorNotOnCurve,
  WrongOrder,
  PointNotOnCurve,
  MalformedEncoding,
  MalformedMessage,
  InvalidPeerPoint,
  InvalidIdentity,
  InvalidParameterFile,
  InvalidKeyFile,
  FieldOutOfRange,
  InvalidScenario,
  VerificationFailed,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::GeneratorNotOnCurve: return "GeneratorNotOnCurve";
    case ErrorCode::WrongOrder: return "WrongOrder";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::MalformedEncoding: return "MalformedEncoding";
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::InvalidPeerPoint: return "InvalidPeerPoint";
    case ErrorCode::InvalidIdentity: return "InvalidIdentity";
    case ErrorCode::InvalidParameterFile: return "InvalidParameterFile";
    case ErrorCode::InvalidKeyFile: return "InvalidKeyFile";
    case ErrorCode::FieldOutOfRange: return "FieldOutOfRange";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code so
/// callers (and attack reports) can tell which check fired.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace aka
