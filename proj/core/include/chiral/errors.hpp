#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chiral {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// Precondition violation on otherwise well-typed input (index out of range,
/// pole on a diagonal that must be regular, undefined order of zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when a self-check inside an algorithm fails. Seeing one of these
/// means an arithmetic bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace chiral
