#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schatten {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  NotUnitary,
  NotDescending,
  NoConvergence,
  InvalidP,
  InvalidDim,
  DimensionMismatch,
  LengthMismatch,
  NegativeEntry,
  DomainViolation,
  HypothesisViolated,
  SingularResolvent,
  SeriesDivergent,
  QuadratureNoConvergence,
  UnknownFixture,
  InvalidProbe,
  InvalidConfig,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable code; tests match on `code()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace schatten
