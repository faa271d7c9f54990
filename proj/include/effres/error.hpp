// error.hpp - error codes and the exception type thrown across effres.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effres {

enum class ErrorCode {
  OutOfRange,
  SelfLoop,
  DuplicateEdge,
  IndexBeyondDegree,
  IsolatedVertex,
  DimensionMismatch,
  SameVertex,
  Disconnected,
  DisconnectedSpectral,
  DuplicateIndex,
  NotAnEdge,
  DegreeViolation,
  InvalidArgument,
  ParityViolation,
  RetriesExhausted,
  EmptyCandidateSet,
  InfeasibleRegularization,
  TooSmall,
  EmptySpec,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::IndexBeyondDegree: return "IndexBeyondDegree";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DisconnectedSpectral: return "DisconnectedSpectral";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::InfeasibleRegularization: return "InfeasibleRegularization";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::EmptySpec: return "EmptySpec";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace effres
