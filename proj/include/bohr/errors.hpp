#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combination (e.g. a nonpositive-integer ₂F₁ denominator).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The series does not converge for the given arguments.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The requested tolerance cannot be certified within the term cap.
class ToleranceUnreachable : public Error {
 public:
  using Error::Error;
};

/// A class parameter violates its admissibility condition.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// A root problem has no sign change on its bracket.
class SignCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace bohr
