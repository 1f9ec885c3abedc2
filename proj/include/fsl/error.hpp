#pragma once

#include <stdexcept>
#include <string>

namespace fsl {

// Each error class corresponds to one CLI exit code (see cli.hpp).

/// Malformed input: wrong shapes, unparsable values, schema violations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (skew form passed to
/// signature, non-isotropic sublagrangian, parity mismatch, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural violation of a complex or local system: flatness,
/// orientation, pseudomanifold condition.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InternalError(what);
}

}  // namespace fsl
