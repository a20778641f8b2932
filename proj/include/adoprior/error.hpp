#pragma once

#include <stdexcept>
#include <string>

namespace adoprior {

enum class ErrorCode {
  InvalidDistribution,
  Parameter,
  Shape,
  Lookup,
  Ambiguity,
  UnsupportedKind,
  ImpossibleObservation,
  Configuration,
  Parse,
  Semantic,
  Io,
  Replication,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can map it onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors point at the offending config line (1-based).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace adoprior
