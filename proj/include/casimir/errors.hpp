#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Order or parameter the library does not support (e.g. Bateman k_l, l >= 0).
class UnsupportedOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not certify the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// det(1 - N) <= 0: the truncated round-trip operator has left the physical
/// regime (spectral radius >= 1).
class PhysicalRegimeError : public std::runtime_error {
 public:
  PhysicalRegimeError(const std::string& what, double q) : std::runtime_error(what), q_(q) {}
  double q() const { return q_; }

 private:
  double q_;
};

/// A vanishing denominator in a scattering amplitude ratio.
class SingularDenominatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partial-wave series whose tail cannot be extrapolated.
class FitRejectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir
