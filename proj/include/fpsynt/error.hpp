#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fpsynt {

/// Base class for every error raised by the synthesis pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or name-resolution failure in a `.fps` source.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct Diagnostic {
  int line = 0;
  std::string message;
};

/// One or more declarations violate format constraints.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// A value does not fit the requested format (encode / quantize).
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Redundant sign bits of a raw word disagree.
class MalformedRawError : public Error {
 public:
  using Error::Error;
};

class GraphCycleError : public Error {
 public:
  GraphCycleError(std::vector<std::string> cycle);

  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

/// No overflow-free format assignment exists within the word width.
class CannotFitError : public Error {
 public:
  using Error::Error;
};

/// The bit-accurate simulator observed a raw value outside its node's
/// format. Never raised for a plan produced by the optimizer.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Code generation cannot represent the plan on the requested target.
class EmitError : public Error {
 public:
  using Error::Error;
};

/// Malformed test-vector file.
class VectorFileError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpsynt
