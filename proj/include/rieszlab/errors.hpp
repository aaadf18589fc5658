#pragma once

#include <stdexcept>
#include <string>

namespace rieszlab {

/// Evaluation at a kernel singularity or on coincident points.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter lies outside the range an operation accepts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request would exceed the sizes this library is built for.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Input violates a structural precondition (e.g. asymmetric measure).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rieszlab
