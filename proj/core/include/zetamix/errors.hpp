#pragma once

#include <stdexcept>
#include <string>

namespace zetamix {

/// Raised when an argument or parameter lies outside the mathematical domain
/// of an operation (s <= 1, p outside (0,1), negative rate, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The integrand produced NaN or infinity at an interior abscissa. This is an
/// infrastructure failure, not a tolerance miss.
class NonFiniteIntegrandError : public std::runtime_error {
 public:
  NonFiniteIntegrandError(double abscissa, double value);

  double abscissa() const noexcept { return abscissa_; }
  double value() const noexcept { return value_; }

 private:
  double abscissa_;
  double value_;
};

/// A quadrature or root search exhausted its budget without meeting its
/// tolerance. Carries the best estimate and its error so callers can report.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& context, double estimate,
                   double error_estimate);

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace zetamix
