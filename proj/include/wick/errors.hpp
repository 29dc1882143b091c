#pragma once

#include <stdexcept>
#include <string>

namespace wick {

/// Kernel evaluated where its prefactor diverges (t = 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Harmonic quantum kernel evaluated at a caustic, omega * t = n * pi.
class CausticError : public SingularityError {
 public:
  using SingularityError::SingularityError;
};

/// A generator or equation form the requested engine cannot handle.
class UnsupportedSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller misuse: mismatched grids, unknown names, inconsistent times.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Field with no mass to take moments of.
class DegenerateFieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace wick
