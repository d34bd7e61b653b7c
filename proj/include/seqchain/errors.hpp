#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seqchain {

enum class ErrorCode {
  BudgetExceeded,
  FiniteSupportSet,
  LengthMismatch,
  MissingTailOracle,
  UnsupportedSpace,
  TopOfChain,
  NotStrictPair,
  UnsupportedOuter,
  AllZeroCoefficients,
  NoNonzeroSupportPoint,
  AllCoefficientsPossiblyZero,
  ParseError,
  UnknownSpace,
  InvalidArgument,
  Internal,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::FiniteSupportSet: return "FiniteSupportSet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingTailOracle: return "MissingTailOracle";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::TopOfChain: return "TopOfChain";
    case ErrorCode::NotStrictPair: return "NotStrictPair";
    case ErrorCode::UnsupportedOuter: return "UnsupportedOuter";
    case ErrorCode::AllZeroCoefficients: return "AllZeroCoefficients";
    case ErrorCode::NoNonzeroSupportPoint: return "NoNonzeroSupportPoint";
    case ErrorCode::AllCoefficientsPossiblyZero: return "AllCoefficientsPossiblyZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSpace: return "UnknownSpace";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI) can surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace seqchain
