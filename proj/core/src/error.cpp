#include "oscillab/error.hpp"

namespace oscillab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyCube: return "EmptyCube";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::ConjugateUndefined: return "ConjugateUndefined";
    case ErrorCode::DivisionByZeroNorm: return "DivisionByZeroNorm";
    case ErrorCode::MissingLogHolder: return "MissingLogHolder";
    case ErrorCode::UncoveredPoint: return "UncoveredPoint";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::MeanZeroViolation: return "MeanZeroViolation";
    case ErrorCode::KernelVanishes: return "KernelVanishes";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::NormUnavailable: return "NormUnavailable";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace oscillab
