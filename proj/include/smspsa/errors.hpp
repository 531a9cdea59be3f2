#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smspsa {

// Base for every failure raised by the library. `kind()` is a stable
// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Shape mismatches between matrices, masks, vectors.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& message) : Error("structural", message) {}
};

// Input outside the mathematical domain of an operation (degenerate rows, bad gamma).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message, std::ptrdiff_t row = -1)
      : Error("domain", message), row_(row) {}

  std::ptrdiff_t row() const noexcept { return row_; }

 private:
  std::ptrdiff_t row_;
};

// Malformed values such as NaN coordinates or out-of-range indices.
class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error("input", message) {}
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& message, double residual)
      : Error("numerical", message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("parse", message + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BudgetError : public Error {
 public:
  BudgetError(const std::string& message, double required)
      : Error("budget", message), required_(required) {}

  double required() const noexcept { return required_; }

 private:
  double required_;
};

class UnsupportedObjective : public Error {
 public:
  explicit UnsupportedObjective(const std::string& message)
      : Error("unsupported_objective", message) {}
};

// The optimizer met an infeasible start or a non-finite objective.
class OptimizerError : public Error {
 public:
  OptimizerError(const std::string& message, std::ptrdiff_t iteration)
      : Error("optimizer", message), iteration_(iteration) {}

  std::ptrdiff_t iteration() const noexcept { return iteration_; }

 private:
  std::ptrdiff_t iteration_;
};

}  // namespace smspsa
