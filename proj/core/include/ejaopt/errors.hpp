#pragma once

#include <stdexcept>
#include <string>

namespace ejaopt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different algebras, or a descriptor/vector is malformed.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain of a function or a precondition on the
/// input (idempotent, Jordan frame, positive cone) is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The hypotheses a closed-form solver relies on are not met.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A feasible set is empty or leaves the domain of the objective.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Malformed structured-text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ejaopt
