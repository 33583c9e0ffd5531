#pragma once

#include <stdexcept>
#include <string>

namespace mixtura {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a constitutive law
/// (nonpositive density, degenerate molar masses, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative scalar or nonlinear solve did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// The accumulated deformation exceeds the small-deformation bound delta.
class SmallnessViolation : public Error {
 public:
  SmallnessViolation(const std::string& what, double accumulated, double bound)
      : Error(what), accumulated_(accumulated), bound_(bound) {}
  double accumulated() const noexcept { return accumulated_; }
  double bound() const noexcept { return bound_; }

 private:
  double accumulated_;
  double bound_;
};

/// A partial density became nonpositive during time integration.
class PositivityLoss : public Error {
 public:
  PositivityLoss(const std::string& what, int cell, double x, double t,
                 double value)
      : Error(what), cell_(cell), x_(x), t_(t), value_(value) {}
  int cell() const noexcept { return cell_; }
  double x() const noexcept { return x_; }
  double t() const noexcept { return t_; }
  double value() const noexcept { return value_; }

 private:
  int cell_;
  double x_;
  double t_;
  double value_;
};

/// Invalid or unreadable configuration. Maps to CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixtura
