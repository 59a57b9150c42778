#pragma once
/// @file errors.hpp
/// @brief Exception taxonomy shared by all exact-geometry modules.
///
/// Every throwing operation in the library uses one of these types, so callers
/// (and the CLI driver) can map failures onto stable exit codes:
///   InputError          — caller passed something outside the documented domain,
///   GuardExceeded       — instance is too large for the hard combinatorial guards,
///   everything else     — a verification or internal consistency failure.

#include <stdexcept>
#include <string>

namespace immgeo {

/// Caller input outside an operation's documented domain (bad sizes, malformed
/// rationals, multidegrees that do not sum correctly, …).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested instance exceeds a hard size guard (enumeration or matrix too large).
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed formula was evaluated at parameters where it provably degenerates
/// (e.g. a denominator sequence vanishes).
class DegenerateFormula : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mixed arithmetic between scalars attached to different quotient rings.
class RingMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Matrix dimensions incompatible with the requested operation.
class ShapeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact inverse requested for a singular matrix.
class NotInvertible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cross-check that must hold by construction failed; indicates a bug in the
/// library (or a violated precondition deep inside), never bad user input.
class InternalCheckFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace immgeo
