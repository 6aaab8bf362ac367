#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invroot {

/// Failure categories. Each maps onto one CLI exit code (see exit_code_for).
enum class ErrorKind {
  kInvalidArgument,   // malformed configuration or specification
  kEvaluationDomain,  // non-finite value, or an argument outside a function's domain
  kRange,             // inverse requested outside the image interval
  kNotMonotone,       // one-to-one requirement violated
  kAdmissibility,     // model rejected by validation
  kDegenerateOffset,  // residual requested with h == 0
  kBracket,           // no sign change over a bracket
  kNoRootInBracket,   // only the spurious alpha = 0 solution exists
  kConvergence,       // iteration or subdivision budget exhausted
  kLexical,
  kSyntax,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code: 0 success, 2 no root, 3 parse, 4 admissibility/domain, 5 convergence.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when an iteration budget runs out; keeps the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double best_estimate)
      : Error(ErrorKind::kConvergence, message), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Lexical and syntax errors carry the character offset into the source text.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t position)
      : Error(kind, message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace invroot
