#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oscillab {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  EmptyCube,
  OutOfDomain,
  ResolutionTooCoarse,
  GridMismatch,
  NonPositiveWeight,
  BracketFailure,
  ConjugateUndefined,
  DivisionByZeroNorm,
  MissingLogHolder,
  UncoveredPoint,
  AlphaOutOfRange,
  MeanZeroViolation,
  KernelVanishes,
  BadDelta,
  TailTooLarge,
  NormUnavailable,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a report row or exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) fail(code, what);
}

}  // namespace oscillab
