#ifndef QUTRIT_ERRORS_HPP
#define QUTRIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qutrit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain. The CLI maps this family to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation could not produce a trustworthy result. The CLI maps this family to exit code 3.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotHermitian : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidState : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedStructure : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NoConvergence : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// r = sqrt(Dz^2 + J^2) vanished, so the mixing angle and the closed forms are undefined.
class DegenerateCoupling : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Reading or writing an output artifact failed; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// No negativity onset exists inside the scanned Dz window.
class NoOnset : public Error {
 public:
  using Error::Error;
};

}  // namespace qutrit

#endif  // QUTRIT_ERRORS_HPP
