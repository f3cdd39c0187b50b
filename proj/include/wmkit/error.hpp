#pragma once

#include <stdexcept>
#include <string>

namespace wmkit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, entries out of range, parse failures.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configured size/time guard would be exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// Required external data (ingested code files, prior reports) is missing.
class MissingData : public Error {
 public:
  using Error::Error;
};

// A search ran out of its node budget. The checkpoint (if any) allows resuming.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace wmkit
