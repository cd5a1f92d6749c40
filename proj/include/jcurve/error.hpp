#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jcurve {

enum class ErrorCode {
  InvalidArgument,
  EmptyInput,
  IdenticalCircles,
  NotClosed,
  RobustnessExhausted,
  ToleranceCollapse,
  AmbiguousNesting,
  NotInComplement,
  OnBoundary,
  NotChained,
  HypothesisViolation,
  BSpansMultipleFaces,
  FaceBoundaryNotSingleCycle,
  ZeroDistance,
  CellBudgetExceeded,
  ParseError,
  ValidationError,
  ToleranceFailure,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IdenticalCircles: return "IdenticalCircles";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::RobustnessExhausted: return "RobustnessExhausted";
    case ErrorCode::ToleranceCollapse: return "ToleranceCollapse";
    case ErrorCode::AmbiguousNesting: return "AmbiguousNesting";
    case ErrorCode::NotInComplement: return "NotInComplement";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::NotChained: return "NotChained";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::BSpansMultipleFaces: return "BSpansMultipleFaces";
    case ErrorCode::FaceBoundaryNotSingleCycle: return "FaceBoundaryNotSingleCycle";
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::CellBudgetExceeded: return "CellBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ToleranceFailure: return "ToleranceFailure";
  }
  return "Unknown";
}

// Base of every exception thrown by the library. Subclasses attach
// diagnostics (partitions, hypothesis reports, face ids).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jcurve
