#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superweil {

/// Failure classes map onto CLI exit codes: validation -> 1, parse -> 2.
enum class ErrorKind { validation, parse };

class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  virtual ErrorKind kind() const noexcept { return ErrorKind::validation; }

 private:
  std::string name_;
};

#define SUPERWEIL_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                         \
   public:                                                            \
    explicit Type(const std::string& what) : Error(#Type, what) {}    \
  }

SUPERWEIL_DEFINE_ERROR(AxiomViolation);
SUPERWEIL_DEFINE_ERROR(AlgebraMismatch);
SUPERWEIL_DEFINE_ERROR(NotInvertible);
SUPERWEIL_DEFINE_ERROR(ParityError);
SUPERWEIL_DEFINE_ERROR(NotWellDefined);
SUPERWEIL_DEFINE_ERROR(UnsupportedPresentation);
SUPERWEIL_DEFINE_ERROR(DomainMismatch);
SUPERWEIL_DEFINE_ERROR(EvaluationDomainError);
SUPERWEIL_DEFINE_ERROR(InexactEvaluation);
SUPERWEIL_DEFINE_ERROR(TruncationError);
SUPERWEIL_DEFINE_ERROR(NotSmooth);
SUPERWEIL_DEFINE_ERROR(DimensionCapExceeded);
SUPERWEIL_DEFINE_ERROR(InvalidArgument);

#undef SUPERWEIL_DEFINE_ERROR

/// Syntax error in one of the text grammars; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error("ParseError", format(what, line, column)), line_(line), column_(column) {}

  ErrorKind kind() const noexcept override { return ErrorKind::parse; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace superweil
