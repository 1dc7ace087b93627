#pragma once

#include <stdexcept>
#include <string>

namespace weyllab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group, algebra or suite description violates its invariants.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (p < 1, foreign element, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands were built over different groups or algebras.
class SpecMismatch : public Error {
 public:
  using Error::Error;
};

/// The operation is defined, but not for this algebra (e.g. Schatten norms over A != C).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace weyllab
