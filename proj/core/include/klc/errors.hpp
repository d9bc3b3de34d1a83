#pragma once

#include <stdexcept>
#include <string>

namespace klc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands that cannot be combined (e.g. exponents of different rank).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Overflow or an undecidable numeric sign.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Bad user input: unknown type names, malformed strings, infinite groups
/// where a finite one is required.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always indicates a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A computation contradicted a theorem whose hypotheses were checked.
/// `witness` is a human readable description of the offending data.
class TheoremViolation : public Error {
 public:
  TheoremViolation(const std::string& what, std::string witness)
      : Error(what + ": " + witness), witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace klc
