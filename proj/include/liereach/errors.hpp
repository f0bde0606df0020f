#pragma once

#include <stdexcept>
#include <string>

namespace liereach {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite evaluation, e.g. an overflowing exponential coefficient.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Operand shapes or anchors do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A jet of order zero was asked for its derivative.
class ExhaustedJetError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A control word whose compensated drift interval would become negative.
class InfeasibleWordError : public Error {
 public:
  using Error::Error;
};

// Malformed user input. `path()` names the offending key, e.g. "controls[1][0].op".
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace liereach
