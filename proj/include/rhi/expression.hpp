#pragma once

// Expression grammar shared by relations, map images and witness strings:
//
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := ('-' | '+') unary | power
//   power := atom ('^' INTEGER)*
//   atom  := INTEGER ['/' INTEGER] | NAME | '(' expr ')'
//   NAME  := [A-Za-z_][A-Za-z0-9_]* ('[' INTEGER ']')*
//
// '*' is evaluated left to right; order matters for graded signs.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rhi {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position, std::string token)
      : std::runtime_error(message), position_(position), token_(std::move(token)) {}
  std::size_t position() const { return position_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

struct Expr {
  enum class Kind { literal, name, add, sub, mul, neg, pow };
  Kind kind;
  std::string text;   // literal digits ("a" or "a/b") or name
  unsigned exponent = 0;
  std::vector<Expr> args;
};

Expr parse_expression(std::string_view source);

/// Names referenced anywhere in the expression, in first-occurrence order.
std::vector<std::string> referenced_names(const Expr& e);

/**
 * Evaluates an expression tree in a ring adaptor providing
 * literal(text), name(text), one(), add, sub, mul and neg.
 */
template <class Ring>
auto evaluate(const Expr& e, const Ring& ring) -> decltype(ring.one()) {
  switch (e.kind) {
    case Expr::Kind::literal:
      return ring.literal(e.text);
    case Expr::Kind::name:
      return ring.name(e.text);
    case Expr::Kind::add:
      return ring.add(evaluate(e.args[0], ring), evaluate(e.args[1], ring));
    case Expr::Kind::sub:
      return ring.sub(evaluate(e.args[0], ring), evaluate(e.args[1], ring));
    case Expr::Kind::mul:
      return ring.mul(evaluate(e.args[0], ring), evaluate(e.args[1], ring));
    case Expr::Kind::neg:
      return ring.neg(evaluate(e.args[0], ring));
    case Expr::Kind::pow: {
      auto base = evaluate(e.args[0], ring);
      auto acc = ring.one();
      for (unsigned i = 0; i < e.exponent; ++i) acc = ring.mul(acc, base);
      return acc;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

/// True if text is a NAME token in the grammar above.
bool is_identifier(std::string_view text);

}  // namespace rhi
