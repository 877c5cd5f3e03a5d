#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed sequence expression or spec document.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A rule or spec is outside its domain (division by zero, negative radicand,
/// non-integer root, n < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact value exceeds the configured digit budget or a fixed-width range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A finite horizon was too short to produce the requested term.
class HorizonError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace radix
