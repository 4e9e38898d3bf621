#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace powerstab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value outside the coefficient domain, division by zero, non-prime modulus.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different rings (or coefficient moduli differ).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Exact division left a remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), detail_(what), position_(position) {}
  /// `what` already locates the error (e.g. line and column).
  ParseError(const std::string& what, std::size_t position, bool located)
      : Error(located ? what : what + " at position " + std::to_string(position)), detail_(what), position_(position) {}

  std::size_t position() const { return position_; }
  /// Message without the position suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// A Groebner computation hit its pair or degree cap. Never a wrong answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed request: missing arguments, unknown names, bad parameters.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace powerstab
