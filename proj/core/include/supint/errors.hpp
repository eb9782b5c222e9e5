#pragma once

#include <stdexcept>
#include <string>

namespace supint {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation received a state expressed in a chart it does not accept.
class ChartMismatchError : public Error {
 public:
  using Error::Error;
};

/// A chart map was evaluated at one of its coordinate singularities
/// (r = 0, sin of the polar angle = 0).
class SingularChartError : public Error {
 public:
  using Error::Error;
};

/// A potential or phase function was evaluated on one of its singular walls.
class SingularityError : public Error {
 public:
  explicit SingularityError(std::string denominator)
      : Error("singular configuration: " + denominator + " = 0"),
        denominator_(std::move(denominator)) {}

  const std::string& denominator() const noexcept { return denominator_; }

 private:
  std::string denominator_;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Jet arithmetic hit a pole of an elementary function at the expansion point.
class JetPoleError : public Error {
 public:
  using Error::Error;
};

/// No phase/scale pair reproduces the line potential in the polar form.
class ConventionMismatchError : public Error {
 public:
  using Error::Error;
};

/// An integration step crossed a singular wall or produced non-finite values.
class StepRejectedError : public Error {
 public:
  using Error::Error;
};

/// Implicit solve did not converge within its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace supint
