#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace termpat {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TagMapError : public ParseError {
 public:
  using ParseError::ParseError;
};

class GrammarError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Arguments outside an operation's domain (empty gold list, all-zero table).
class DomainError : public Error {
 public:
  using Error::Error;
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace termpat
