#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvlp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: bad shapes, nonpositive parameters, p <= 1, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A subproblem produced NaN or Inf.
class NonFinite : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. line/offset are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset = 0)
      : Error(format(what, line, offset)), line_(line), offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t offset) {
    std::string msg = what;
    if (line > 0) msg += " (line " + std::to_string(line);
    if (offset > 0) msg += (line > 0 ? ", " : " (") + std::string("offset ") + std::to_string(offset);
    if (line > 0 || offset > 0) msg += ")";
    return msg;
  }

  std::size_t line_;
  std::size_t offset_;
};

}  // namespace tvlp
