#pragma once

#include <stdexcept>

namespace stabsim {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (unknown label, layout
/// mismatch, negative rate, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// The two-qubit block does not satisfy E_A + E_D = E_B + E_C.
class EnergyMatchingError : public Error {
 public:
  using Error::Error;
};

/// The Liouvillian kernel is not one-dimensional.
class DegenerateKernel : public Error {
 public:
  using Error::Error;
};

/// The time integrator produced a non-finite or non-trace-preserving state.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

/// A classical rate matrix has no unique stationary distribution.
class ReducibleChain : public Error {
 public:
  using Error::Error;
};

/// Readout confusion matrix cannot be inverted (fidelity <= 0.5).
class SingularConfusion : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration does not validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabsim
