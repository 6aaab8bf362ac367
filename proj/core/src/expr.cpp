#include "invroot/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>

#include <fmt/format.h>

#include "invroot/error.hpp"

namespace invroot::expr {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kNumber: return "number";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kParen: return "paren";
    case TokenKind::kEnd: return "end";
  }
  return "unknown";
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kPow: return "^";
  }
  return "?";
}

std::string_view to_string(Function fn) {
  switch (fn) {
    case Function::kLn: return "ln";
    case Function::kExp: return "exp";
    case Function::kSqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tokenizer

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; };

  while (i < n) {
    const char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(source[i + 1]))) {
      while (i < n && is_digit(source[i])) ++i;
      if (i < n && source[i] == '.') {
        ++i;
        while (i < n && is_digit(source[i])) ++i;
      }
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
        if (j < n && is_digit(source[j])) {
          i = j;
          while (i < n && is_digit(source[i])) ++i;
        }
      }
      tokens.push_back({TokenKind::kNumber, std::string(source.substr(start, i - start)), start});
    } else if (is_alpha(c)) {
      while (i < n && (is_alpha(source[i]) || is_digit(source[i]))) ++i;
      tokens.push_back(
          {TokenKind::kIdentifier, std::string(source.substr(start, i - start)), start});
    } else if (std::strchr("+-*/^", c) != nullptr && c != '\0') {
      tokens.push_back({TokenKind::kOperator, std::string(1, c), start});
      ++i;
    } else if (c == '(' || c == ')') {
      tokens.push_back({TokenKind::kParen, std::string(1, c), start});
      ++i;
    } else {
      throw ParseError(ErrorKind::kLexical,
                       fmt::format("invalid character '{}' at offset {}", c, start), start);
    }
  }
  tokens.push_back({TokenKind::kEnd, "", n});
  return tokens;
}

// ---------------------------------------------------------------------------
// Tree

Expr Expr::constant(double value) {
  return Expr(std::make_shared<const Node>(Node{Constant{value}}));
}
Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{Variable{}})); }
Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(Node{Negate{std::move(operand)}}));
}
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}}));
}
Expr Expr::call(Function fn, Expr argument) {
  return Expr(std::make_shared<const Node>(Node{Call{fn, std::move(argument)}}));
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool Expr::is_constant() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return true; },
                        [](const Variable&) { return false; },
                        [](const Negate& n) { return n.operand.is_constant(); },
                        [](const Binary& b) { return b.lhs.is_constant() && b.rhs.is_constant(); },
                        [](const Call& c) { return c.argument.is_constant(); },
                    },
                    node_->value);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& va = a.node_->value;
  const auto& vb = b.node_->value;
  if (va.index() != vb.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Constant& c) {
            const double other = std::get<Constant>(vb).value;
            return std::memcmp(&c.value, &other, sizeof(double)) == 0;
          },
          [&](const Variable&) { return true; },
          [&](const Negate& n) { return n.operand == std::get<Negate>(vb).operand; },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(vb);
            return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Call& x) {
            const auto& y = std::get<Call>(vb);
            return x.fn == y.fn && x.argument == y.argument;
          },
      },
      va);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::kEnd) {
      throw ParseError(ErrorKind::kSyntax, "token stream must end with an end token",
                       tokens_.empty() ? 0 : tokens_.back().position);
    }
  }

  Expr parse_all() {
    Expr e = expression();
    if (peek().kind != TokenKind::kEnd) fail("operator or end of input");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at(TokenKind kind, std::string_view lexeme) const {
    return peek().kind == kind && peek().lexeme == lexeme;
  }

  [[noreturn]] void fail(std::string_view expected) const {
    const Token& t = peek();
    const std::string found =
        t.kind == TokenKind::kEnd ? "end of input" : fmt::format("'{}'", t.lexeme);
    throw ParseError(ErrorKind::kSyntax,
                     fmt::format("expected {} at offset {}, found {}", expected, t.position,
                                 found),
                     t.position);
  }

  Expr expression() {
    Expr lhs = term();
    while (at(TokenKind::kOperator, "+") || at(TokenKind::kOperator, "-")) {
      const BinaryOp op = advance().lexeme == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      lhs = Expr::binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (at(TokenKind::kOperator, "*") || at(TokenKind::kOperator, "/")) {
      const BinaryOp op = advance().lexeme == "*" ? BinaryOp::kMul : BinaryOp::kDiv;
      lhs = Expr::binary(op, std::move(lhs), unary());
    }
    return lhs;
  }

  Expr unary() {
    if (at(TokenKind::kOperator, "-")) {
      advance();
      return Expr::negate(unary());
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!at(TokenKind::kOperator, "^")) return base;
    advance();
    const std::size_t exponent_position = peek().position;
    Expr exponent = exponent_expr();
    if (!exponent.is_constant()) {
      throw ParseError(ErrorKind::kSyntax,
                       fmt::format("exponent at offset {} must be a constant", exponent_position),
                       exponent_position);
    }
    return Expr::binary(BinaryOp::kPow, std::move(base), std::move(exponent));
  }

  Expr exponent_expr() {
    if (at(TokenKind::kOperator, "-")) {
      advance();
      return Expr::negate(exponent_expr());
    }
    return power();
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kNumber: {
        double value = 0.0;
        const char* first = t.lexeme.data();
        const char* last = first + t.lexeme.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
          throw ParseError(ErrorKind::kSyntax,
                           fmt::format("number '{}' at offset {} is not a finite real",
                                       t.lexeme, t.position),
                           t.position);
        }
        advance();
        return Expr::constant(value);
      }
      case TokenKind::kIdentifier: {
        if (t.lexeme == "x") {
          advance();
          return Expr::variable();
        }
        Function fn;
        if (t.lexeme == "ln") {
          fn = Function::kLn;
        } else if (t.lexeme == "exp") {
          fn = Function::kExp;
        } else if (t.lexeme == "sqrt") {
          fn = Function::kSqrt;
        } else {
          throw ParseError(ErrorKind::kSyntax,
                           fmt::format("unknown identifier '{}' at offset {} (the variable is x; "
                                       "functions are ln, exp, sqrt)",
                                       t.lexeme, t.position),
                           t.position);
        }
        advance();
        if (!at(TokenKind::kParen, "(")) fail("'(' after function name");
        advance();
        Expr argument = expression();
        if (!at(TokenKind::kParen, ")")) fail("')'");
        advance();
        return Expr::call(fn, std::move(argument));
      }
      case TokenKind::kParen:
        if (t.lexeme == "(") {
          advance();
          Expr inner = expression();
          if (!at(TokenKind::kParen, ")")) fail("')'");
          advance();
          return inner;
        }
        break;
      default:
        break;
    }
    fail("number, x, function call or '('");
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::span<const Token> tokens) { return Parser(tokens).parse_all(); }

Expr parse(std::string_view source) {
  const auto tokens = tokenize(source);
  return parse(std::span<const Token>(tokens));
}

// ---------------------------------------------------------------------------
// Evaluation

double evaluate(const Expr& e, double x) {
  auto domain_error = [&](std::string_view why) -> double {
    throw Error(ErrorKind::kEvaluationDomain,
                fmt::format("{} in {} at x = {:.17g}", why, print(e), x));
  };
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [&](const Variable&) { return x; },
          [&](const Negate& n) { return -evaluate(n.operand, x); },
          [&](const Binary& b) {
            const double l = evaluate(b.lhs, x);
            const double r = evaluate(b.rhs, x);
            switch (b.op) {
              case BinaryOp::kAdd: return l + r;
              case BinaryOp::kSub: return l - r;
              case BinaryOp::kMul: return l * r;
              case BinaryOp::kDiv:
                if (r == 0.0) return domain_error("division by zero");
                return l / r;
              case BinaryOp::kPow:
                if (l == 0.0 && r < 0.0) return domain_error("zero to a negative power");
                if (l < 0.0 && std::trunc(r) != r) {
                  return domain_error("negative base to a non-integer power");
                }
                return std::pow(l, r);
            }
            return domain_error("unknown operator");
          },
          [&](const Call& c) {
            const double a = evaluate(c.argument, x);
            switch (c.fn) {
              case Function::kLn:
                if (!(a > 0.0)) return domain_error("ln of a non-positive value");
                return std::log(a);
              case Function::kExp: return std::exp(a);
              case Function::kSqrt:
                if (a < 0.0) return domain_error("sqrt of a negative value");
                return std::sqrt(a);
            }
            return domain_error("unknown function");
          },
      },
      e.node().value);
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

const Constant* as_constant(const Expr& e) { return std::get_if<Constant>(&e.node().value); }

bool is_value(const Expr& e, double v) {
  const Constant* c = as_constant(e);
  return c != nullptr && c->value == v;
}

// Constructors that fold constant operands; folded results must stay finite.
Expr fold_binary(BinaryOp op, Expr lhs, Expr rhs) {
  const Constant* l = as_constant(lhs);
  const Constant* r = as_constant(rhs);
  if (l != nullptr && r != nullptr) {
    double v = std::numeric_limits<double>::quiet_NaN();
    switch (op) {
      case BinaryOp::kAdd: v = l->value + r->value; break;
      case BinaryOp::kSub: v = l->value - r->value; break;
      case BinaryOp::kMul: v = l->value * r->value; break;
      case BinaryOp::kDiv:
        if (r->value != 0.0) v = l->value / r->value;
        break;
      case BinaryOp::kPow:
        if (l->value > 0.0) v = std::pow(l->value, r->value);
        break;
    }
    if (std::isfinite(v)) return Expr::constant(v);
  }
  switch (op) {
    case BinaryOp::kAdd:
      if (is_value(lhs, 0.0)) return rhs;
      if (is_value(rhs, 0.0)) return lhs;
      break;
    case BinaryOp::kSub:
      if (is_value(rhs, 0.0)) return lhs;
      if (is_value(lhs, 0.0)) return Expr::negate(std::move(rhs));
      break;
    case BinaryOp::kMul:
      if (is_value(lhs, 0.0) || is_value(rhs, 0.0)) return Expr::constant(0.0);
      if (is_value(lhs, 1.0)) return rhs;
      if (is_value(rhs, 1.0)) return lhs;
      break;
    case BinaryOp::kDiv:
      if (is_value(lhs, 0.0)) return Expr::constant(0.0);
      if (is_value(rhs, 1.0)) return lhs;
      break;
    case BinaryOp::kPow:
      if (is_value(rhs, 1.0)) return lhs;
      if (is_value(rhs, 0.0)) return Expr::constant(1.0);
      break;
  }
  return Expr::binary(op, std::move(lhs), std::move(rhs));
}

Expr fold_negate(Expr e) {
  if (const Constant* c = as_constant(e)) return Expr::constant(-c->value);
  return Expr::negate(std::move(e));
}

Expr add(Expr a, Expr b) { return fold_binary(BinaryOp::kAdd, std::move(a), std::move(b)); }
Expr sub(Expr a, Expr b) { return fold_binary(BinaryOp::kSub, std::move(a), std::move(b)); }
Expr mul(Expr a, Expr b) { return fold_binary(BinaryOp::kMul, std::move(a), std::move(b)); }
Expr div(Expr a, Expr b) { return fold_binary(BinaryOp::kDiv, std::move(a), std::move(b)); }

}  // namespace

Expr derive(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const Constant&) { return Expr::constant(0.0); },
          [](const Variable&) { return Expr::constant(1.0); },
          [](const Negate& n) { return fold_negate(derive(n.operand)); },
          [&](const Binary& b) {
            const Expr& u = b.lhs;
            const Expr& v = b.rhs;
            switch (b.op) {
              case BinaryOp::kAdd: return add(derive(u), derive(v));
              case BinaryOp::kSub: return sub(derive(u), derive(v));
              case BinaryOp::kMul: return add(mul(derive(u), v), mul(u, derive(v)));
              case BinaryOp::kDiv:
                return div(sub(mul(derive(u), v), mul(u, derive(v))), mul(v, v));
              case BinaryOp::kPow: {
                const double c = evaluate(v, 0.0);
                return mul(mul(Expr::constant(c),
                               fold_binary(BinaryOp::kPow, u, Expr::constant(c - 1.0))),
                           derive(u));
              }
            }
            return Expr::constant(0.0);
          },
          [&](const Call& c) {
            const Expr& u = c.argument;
            switch (c.fn) {
              case Function::kLn: return div(derive(u), u);
              case Function::kExp: return mul(e, derive(u));
              case Function::kSqrt: return div(derive(u), mul(Expr::constant(2.0), e));
            }
            return Expr::constant(0.0);
          },
      },
      e.node().value);
}

// ---------------------------------------------------------------------------
// Printing

std::string print(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const Constant& c) {
            if (std::signbit(c.value)) return fmt::format("(-{:.17g})", -c.value);
            return fmt::format("{:.17g}", c.value);
          },
          [](const Variable&) { return std::string("x"); },
          [](const Negate& n) { return fmt::format("(-{})", print(n.operand)); },
          [](const Binary& b) {
            return fmt::format("({} {} {})", print(b.lhs), to_string(b.op), print(b.rhs));
          },
          [](const Call& c) { return fmt::format("{}({})", to_string(c.fn), print(c.argument)); },
      },
      e.node().value);
}

// ---------------------------------------------------------------------------
// Model bridge

namespace {

FunctionModel make_model(const Expr& e, std::string_view source, const Interval& domain) {
  RealFunction f = [e](double x) { return evaluate(e, x); };
  const Monotonicity m = numeric::check_monotone(f, domain);
  if (m == Monotonicity::kNotMonotone) {
    throw Error(ErrorKind::kAdmissibility,
                fmt::format("'{}' is not strictly monotone (one-to-one) on {}; the identity "
                            "method needs an invertible function",
                            source, domain.to_string()));
  }
  const Expr d = derive(e);
  AnalyticParts parts;
  parts.derivative = [d](double x) { return evaluate(d, x); };
  return FunctionModel(std::string(source), domain, std::move(f), std::move(parts));
}

}  // namespace

FunctionModel to_function_model(const Expr& e, const Interval& domain) {
  return make_model(e, print(e), domain);
}

FunctionModel to_function_model(std::string_view source, const Interval& domain) {
  return make_model(parse(source), source, domain);
}

}  // namespace invroot::expr
