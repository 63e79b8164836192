#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaut {

enum class ErrorCode {
  DimensionMismatch,
  SingularMatrix,
  NotIntegral,
  NotUnimodular,
  OutOfDomain,
  OutOfCone,
  Unsupported,
  InvalidComplex,
  InvalidIso,
  InvalidMap,
  TrivialEndomorphism,
  NotStrongUnit,
  NonPositiveDenominator,
  MixedOrientation,
  OnBoundary,
  EquivalenceViolation,
  C1Violation,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Domain failure. The code is stable and appears in the CLI's error objects.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chaut
