#pragma once

#include <stdexcept>
#include <string>

namespace transiso {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A group spec, subgroup or transversal failed validation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A constructed group would exceed the configured order cap.
class OrderLimitExceeded : public Error {
 public:
  using Error::Error;
};

// An enumeration would visit more objects than the caller allowed.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Signals a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace transiso
