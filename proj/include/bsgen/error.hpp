#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsgen {

/// Error codes surfaced by every module. The CLI maps them to exit codes.
enum class ErrorCode {
  MixedRing,
  RingMismatch,
  MissingBasis,
  UnitIdeal,
  DecompositionUnsupported,
  ZeroInput,
  OrderBlockMismatch,
  HomogeneityViolation,
  TimeoutBudget,
  DivisionByZeroModQ,
  FamilyVanishesModQ,
  NonRationalCertificate,
  PointOutsideStratum,
  EmptyAnsatz,
  SyntaxError,
  UndeclaredVariable,
  InvalidInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedRing: return "MixedRing";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::MissingBasis: return "MissingBasis";
    case ErrorCode::UnitIdeal: return "UnitIdeal";
    case ErrorCode::DecompositionUnsupported: return "DecompositionUnsupported";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::OrderBlockMismatch: return "OrderBlockMismatch";
    case ErrorCode::HomogeneityViolation: return "HomogeneityViolation";
    case ErrorCode::TimeoutBudget: return "TimeoutBudget";
    case ErrorCode::DivisionByZeroModQ: return "DivisionByZeroModQ";
    case ErrorCode::FamilyVanishesModQ: return "FamilyVanishesModQ";
    case ErrorCode::NonRationalCertificate: return "NonRationalCertificate";
    case ErrorCode::PointOutsideStratum: return "PointOutsideStratum";
    case ErrorCode::EmptyAnsatz: return "EmptyAnsatz";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bsgen
