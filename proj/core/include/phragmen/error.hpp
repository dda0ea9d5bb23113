#pragma once

#include <stdexcept>
#include <string>

namespace phragmen {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the subclasses let the CLI map failures
// onto exit codes and let tests assert on the precise failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. `where` names the line or field that failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where)
      : Error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic was requested but a rule parameter evaluates to an
// irrational number on a reachable argument.
class NumericModeError : public Error {
 public:
  using Error::Error;
};

// Fewer than k candidates have at least one approver.
class InsufficientCandidates : public Error {
 public:
  using Error::Error;
};

// A brute-force search would exceed its configured enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace phragmen
