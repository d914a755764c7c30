#pragma once

#include <stdexcept>
#include <string>

namespace stringprime {

// Malformed user input (bad digit text, bad argument shape).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the range where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request exceeds a configured ceiling (sieve limit, digit capacity).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact result does not fit in 128 bits.
class Overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace stringprime
