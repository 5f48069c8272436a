#pragma once

#include <stdexcept>
#include <string>

namespace commexp {

/// Failure of a numerical procedure (non-convergence, singular solve, ...).
/// Contract violations (dimension mismatch, non-finite input) use
/// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The eigenvalue iteration exhausted its budget.
class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

/// A cross-check oracle refused the input (e.g. defective eigenbasis).
/// Signals "no answer available", never a wrong answer.
class OracleUnavailableError : public NumericalError {
 public:
  explicit OracleUnavailableError(const std::string& what) : NumericalError(what) {}
};

}  // namespace commexp
