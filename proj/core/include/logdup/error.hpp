#pragma once

#include <stdexcept>
#include <string>

namespace logdup {

/// Raised when a caller breaks an operation's precondition (mismatched goal
/// lengths, invalid witness, oracle size caps, ...).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::string file, int line, int column, const std::string &message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        file_(std::move(file)), line_(line), column_(column) {}

  const std::string &file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  std::string file_;
  int line_;
  int column_;
};

} // namespace logdup
