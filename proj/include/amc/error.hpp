#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amc {

// Malformed input text (NNF, DIMACS, labeling files). Carries the 1-based line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// A value handed to a semiring operation is not in that semiring's carrier.
class SemiringTypeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Missing parameters, missing labels, unknown semiring names.
class ConfigError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Negative literal used with a positive-only semiring (WHY, RA+).
class UnsupportedLiteralError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// API misuse, e.g. mixing diagrams from different stores.
class UsageError : public std::logic_error {
  using std::logic_error::logic_error;
};

// Enumeration or checking would exceed the configured variable budget.
class BudgetExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace amc
