#pragma once

#include <stdexcept>
#include <string>

namespace picubed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionOutOfRange : public Error {
 public:
  using Error::Error;
};

class PrecisionInsufficient : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroField : public Error {
 public:
  using Error::Error;
};

class UnsupportedAbscissa : public Error {
 public:
  using Error::Error;
};

class AbscissaOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateAbscissa : public Error {
 public:
  using Error::Error;
};

class IndexBelowStart : public Error {
 public:
  using Error::Error;
};

/// The term budget ran out before the requested accuracy could be certified.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed argument that is not covered by a more specific error.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace picubed
