#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "invroot/function_model.hpp"

namespace invroot::expr {

// Grammar (one variable, x):
//
//   expression := term { ("+" | "-") term }
//   term       := unary { ("*" | "/") unary }
//   unary      := "-" unary | power
//   power      := primary [ "^" exponent ]
//   exponent   := "-" exponent | power          (must be constant)
//   primary    := number | "x" | function "(" expression ")" | "(" expression ")"
//   function   := "ln" | "exp" | "sqrt"
//   number     := digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//
// Precedence: ^ binds tightest and is right associative, then unary minus,
// then * /, then + -; the binary operators other than ^ associate left.

enum class TokenKind { kNumber, kIdentifier, kOperator, kParen, kEnd };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string lexeme;
  std::size_t position = 0;  // character offset into the source

  friend bool operator==(const Token&, const Token&) = default;
};

/// Token stream terminated by a kEnd token; whitespace is skipped.
/// ParseError(kLexical) at the first invalid character.
std::vector<Token> tokenize(std::string_view source);

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };
enum class Function { kLn, kExp, kSqrt };

std::string_view to_string(BinaryOp op);
std::string_view to_string(Function fn);

struct Node;

/// Immutable expression tree; copies share nodes.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Function fn, Expr argument);

  const Node& node() const noexcept { return *node_; }

  /// True when the tree contains no variable.
  bool is_constant() const;

  /// Structural equality (constants compared bitwise-exactly).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Constant {
  double value;
};
struct Variable {};
struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct Call {
  Function fn;
  Expr argument;
};

struct Node {
  std::variant<Constant, Variable, Negate, Binary, Call> value;
};

/// ParseError(kSyntax) with the offending token's position.
Expr parse(std::span<const Token> tokens);

/// tokenize + parse.
Expr parse(std::string_view source);

/// Error(kEvaluationDomain) naming the offending sub-expression for ln of a
/// non-positive value, sqrt of a negative value, division by zero, or a
/// power with no real value. Overflow follows IEEE semantics.
double evaluate(const Expr& e, double x);

/// Symbolic d/dx: sum, product, quotient, chain and constant-power rules plus
/// ln, exp and sqrt. Only constant folding is applied.
Expr derive(const Expr& e);

/// Fully parenthesized form that parses back to an equal-valued tree.
std::string print(const Expr& e);

/// Model with f from evaluate, f' from derive, and numerically synthesized
/// f^-1, F and G. Error(kAdmissibility) when the sampled values are not
/// strictly monotone on the domain.
FunctionModel to_function_model(const Expr& e, const Interval& domain);

/// parse + to_function_model, keeping the source text as the model name.
FunctionModel to_function_model(std::string_view source, const Interval& domain);

}  // namespace invroot::expr
