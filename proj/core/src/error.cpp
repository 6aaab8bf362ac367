#include "invroot/error.hpp"

namespace invroot {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kEvaluationDomain: return "domain_error";
    case ErrorKind::kRange: return "range_error";
    case ErrorKind::kNotMonotone: return "not_monotone";
    case ErrorKind::kAdmissibility: return "admissibility_error";
    case ErrorKind::kDegenerateOffset: return "degenerate_offset";
    case ErrorKind::kBracket: return "bracket_error";
    case ErrorKind::kNoRootInBracket: return "no_root_in_bracket";
    case ErrorKind::kConvergence: return "convergence_error";
    case ErrorKind::kLexical: return "lexical_error";
    case ErrorKind::kSyntax: return "syntax_error";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBracket:
    case ErrorKind::kNoRootInBracket:
      return 2;
    case ErrorKind::kLexical:
    case ErrorKind::kSyntax:
      return 3;
    case ErrorKind::kConvergence:
      return 5;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kEvaluationDomain:
    case ErrorKind::kRange:
    case ErrorKind::kNotMonotone:
    case ErrorKind::kAdmissibility:
    case ErrorKind::kDegenerateOffset:
      return 4;
  }
  return 5;
}

}  // namespace invroot
