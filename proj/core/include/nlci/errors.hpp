#pragma once

#include <stdexcept>
#include <string>

namespace nlci {

/// A shooting trajectory left the dissipative range (|phi| > 10 u*).
/// Signals a bad (mu, s) pair, not model behavior.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested equilibrium mode does not exist at these parameters
/// (lambda <= a(0) j^2, or mu <= j^2 for the profile problem).
class NoSuchModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its iteration cap.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trajectory did not approach its target (decay fit precondition).
class NonConvergingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A probe reached t_max without settling at an equilibrium.
class UnresolvedProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run configuration failed validation. what() carries the JSON path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlci
