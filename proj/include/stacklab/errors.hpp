#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stacklab {

/// Caller violated a precondition (bad argument, invalid scene, unknown key).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rejection sampling could not fill a (height, label, difficulty) cell.
class InfeasibleCell : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed line-delimited input. `line` is 1-based; 0 when not line-bound.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// T_pref requested where Recall or Specificity is undefined, or both are zero.
class UndefinedPreference : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace stacklab
