#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqbox {

enum class Errc {
  // input validation (CLI exit code 2)
  SizeMismatch,
  InvalidDiagonal,
  NonSymmetric,
  TriangleViolation,
  ZeroMass,
  MassNotNormalized,
  DuplicatePoint,
  NotLipschitz,
  MarginalMismatch,
  NegativeEntry,
  NotPermutation,
  NotIsometry,
  NotMeasurePreserving,
  LengthMismatch,
  KappaOutOfRange,
  InvalidArgument,
  GridIncompatible,
  EmptyRelation,
  SpaceMismatch,
  ParseError,
  // work caps (CLI exit code 3)
  TooLarge,
  BudgetExceeded,
  // environment
  IoError,
};

std::string_view errc_name(Errc code);

/// True for error codes that signal a work cap rather than bad input.
inline bool is_budget_error(Errc code) {
  return code == Errc::TooLarge || code == Errc::BudgetExceeded;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace eqbox
