#pragma once

#include <stdexcept>
#include <string>

namespace sumsetlab {

/// Invalid argument (empty set where one is required, non-positive modulus, ...).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An element sum or product left the 64-bit range, or a rational overflowed.
class ArithmeticError : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

/// A theorem's hypothesis does not hold for the given input.
class HypothesisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A recovery stage could not build a progression pair for the input.
class StructureNotFound : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured instance budget.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    [[nodiscard]] double estimate() const { return estimate_; }

  private:
    double estimate_;
};

/// Malformed input file or literal.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace sumsetlab
