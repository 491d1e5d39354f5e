#pragma once

#include <stdexcept>
#include <string>

namespace circpar {

/// Violated precondition: bad side count, index, height or point.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The deviation did not change sign over the bisection interval.
class BracketError : public std::runtime_error {
public:
  BracketError(const std::string &what, int side = 0)
    : std::runtime_error(what), side_(side) {}
  int side() const { return side_; }

private:
  int side_;
};

/// Malformed control-net file; line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace circpar
