#pragma once

#include <stdexcept>
#include <string>

namespace twrelay {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to converge or produced an unusable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A caller violated a documented precondition (non-Hermitian input,
/// dimension mismatch, non-finite entries).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A channel realization is degenerate (rank-deficient null space, zero
/// relay chain). Probability-zero events under the i.i.d. Gaussian model;
/// callers may resample.
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario or system configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure, annotated with the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace twrelay
