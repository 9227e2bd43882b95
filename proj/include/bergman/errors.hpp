#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Analytic continuation of a fractional power crossed a zero it cannot pass.
class BranchError : public Error {
 public:
  using Error::Error;
};

// Taylor data too short for the requested projection.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// A closed form does not apply to the given problem instance.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis on the inputs is violated.
class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

// An iterative method exhausted its budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// A converged root violates a side condition of the closed form.
class InvalidSolution : public Error {
 public:
  using Error::Error;
};

// The divisor linear system does not have a one-dimensional null space.
class DegenerateNullSpace : public Error {
 public:
  using Error::Error;
};

// The extremality certificate of a candidate solution exceeded its tolerance.
class CertificateFailed : public Error {
 public:
  using Error::Error;
};

// Malformed command-line or JSON input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace bergman
