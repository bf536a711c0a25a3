#pragma once

#include <stdexcept>
#include <string>

namespace einext {

// All library failures derive from Error; the CLI maps them to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A computation declined to proceed (non-constant data, wrong type, failed twisting).
class RefusalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace einext
