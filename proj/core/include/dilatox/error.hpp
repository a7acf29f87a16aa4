#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dilatox {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteDerivative,
  DegenerateJacobian,
  StepTooLarge,
  EmptyRange,
  ComplexDrift,
  BlowUp,
  NonPositiveImag,
  DegenerateDenominator,
  OutOfDomain,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteDerivative: return "NonFiniteDerivative";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::ComplexDrift: return "ComplexDrift";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::NonPositiveImag: return "NonPositiveImag";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dilatox
