#pragma once

#include <stdexcept>
#include <string>

namespace ovm {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Values built over different ambient spaces, or overlapping parts where
/// the canonical form forbids them.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A numeric value outside its admissible range (x outside (0,1) on the
/// off-diagonal support, negative measure values, non-unimodular phases).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation invoked with inputs that violate its stated precondition
/// (non-orthogonal summands, inconsistent densities, bad prefix order).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A query outside the tabulated / registered set (off-table measure
/// lookups, projections over unregistered directions).
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Malformed input files or schema violations.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ovm
