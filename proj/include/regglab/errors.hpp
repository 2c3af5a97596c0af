#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regglab {

enum class ErrorCode {
  LoopEdge,
  DuplicateEdge,
  VertexOutOfRange,
  OverlappingEdges,
  SizeMismatch,
  NotAPermutation,
  ParseError,
  NoConvergence,
  Singular,
  ParityError,
  TooLarge,
  RejectionBudgetExceeded,
  DegreeSumMismatch,
  DomainError,
  RegimeViolation,
  EmptySide,
  InvalidChoice,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::OverlappingEdges: return "OverlappingEdges";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::DegreeSumMismatch: return "DegreeSumMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::InvalidChoice: return "InvalidChoice";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace regglab
