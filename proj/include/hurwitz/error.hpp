#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hurwitz {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inputs that violate an operation's precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A configured element, class, iteration or orbit cap would be exceeded.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &detail, std::size_t line, const std::string &file = {})
      : Error(format(detail, line, file)), detail_(detail), line_(line) {}
  std::size_t line() const { return line_; }
  const std::string &detail() const { return detail_; }
  ParseError in_file(const std::string &file) const { return ParseError(detail_, line_, file); }

private:
  static std::string format(const std::string &detail, std::size_t line, const std::string &file) {
    std::string out = file.empty() ? "" : file + ": ";
    if (line)
      out += "line " + std::to_string(line) + ": ";
    return out + detail;
  }
  std::string detail_;
  std::size_t line_;
};

/// Non-convergence, singular systems, step underflow, root collisions.
class NumericalFailure : public Error {
public:
  using Error::Error;
};

} // namespace hurwitz
