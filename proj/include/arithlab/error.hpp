#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arithlab {

enum class ErrorKind {
  BadReduction,
  SingularMatrix,
  PoleAtOrigin,
  ParameterError,
  SingularAtOrigin,
  NotZeroCurvature,
  InvertibilityFailure,
  NotAPthPower,
  NotPositiveDefinite,
  NotSaturated,
  DegenerateQuotient,
  ZeroMap,
  NotInjective,
  NoUpperBound,
  FullRank,
  NotSeparated,
  NotARoot,
  SingularBranch,
  InsufficientPrecision,
  BadPrime,
  SmallPrime,
  SyntaxError,
  InternalError,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every module error is one of these; `kind()` is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Raised by reductions modulo p; carries the offending prime.
class BadReductionError : public Error {
 public:
  BadReductionError(unsigned long long p, const std::string& detail)
      : Error(ErrorKind::BadReduction, "p = " + std::to_string(p) + ": " + detail), p_(p) {}
  unsigned long long prime() const noexcept { return p_; }

 private:
  unsigned long long p_;
};

/// Parse failure at a byte offset of the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected)
      : Error(ErrorKind::SyntaxError,
              "at offset " + std::to_string(offset) + ", expected " + expected),
        offset_(offset),
        expected_(expected) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace arithlab
