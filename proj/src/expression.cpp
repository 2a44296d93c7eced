#include "rhi/expression.hpp"

#include <cctype>

namespace rhi {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

struct Token {
  enum class Kind { number, name, op, end };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(c)) {
      while (i < s.size() && digit(s[i])) ++i;
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (i >= s.size() || !digit(s[i]))
          throw ParseError("expected denominator after '/' at position " + std::to_string(i), i, "/");
        while (i < s.size() && digit(s[i])) ++i;
      }
      out.push_back({Token::Kind::number, std::string(s.substr(start, i - start)), start});
    } else if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      while (i < s.size() && s[i] == '[') {
        std::size_t j = i + 1;
        while (j < s.size() && digit(s[j])) ++j;
        if (j == i + 1 || j >= s.size() || s[j] != ']')
          throw ParseError("malformed factor index at position " + std::to_string(i), i, "[");
        i = j + 1;
      }
      out.push_back({Token::Kind::name, std::string(s.substr(start, i - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '^' || c == '(' || c == ')') {
      out.push_back({Token::Kind::op, std::string(1, c), start});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i), i,
                       std::string(1, c));
    }
  }
  out.push_back({Token::Kind::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Token::Kind::end) fail("unexpected token", peek());
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* op) const { return peek().kind == Token::Kind::op && peek().text == op; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    const std::string shown = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + " " + shown + " at position " + std::to_string(t.pos), t.pos, t.text);
  }

  Expr expr() {
    Expr lhs = term();
    while (is_op("+") || is_op("-")) {
      Expr::Kind k = take().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
      Expr rhs = term();
      lhs = Expr{k, "", 0, {std::move(lhs), std::move(rhs)}};
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_op("*")) {
      take();
      Expr rhs = unary();
      lhs = Expr{Expr::Kind::mul, "", 0, {std::move(lhs), std::move(rhs)}};
    }
    return lhs;
  }

  Expr unary() {
    if (is_op("-")) {
      take();
      return Expr{Expr::Kind::neg, "", 0, {unary()}};
    }
    if (is_op("+")) {
      take();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    while (is_op("^")) {
      Token caret = take();
      if (peek().kind != Token::Kind::number || peek().text.find('/') != std::string::npos) {
        if (peek().kind == Token::Kind::end)
          throw ParseError("expected exponent after '^' at position " + std::to_string(caret.pos), caret.pos, "^");
        fail("expected non-negative integer exponent after '^', got", peek());
      }
      Token n = take();
      unsigned long e = 0;
      try {
        e = std::stoul(n.text);
      } catch (const std::exception&) {
        fail("exponent out of range", n);
      }
      if (e > 100000) fail("exponent out of range", n);
      base = Expr{Expr::Kind::pow, "", static_cast<unsigned>(e), {std::move(base)}};
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::number:
        return Expr{Expr::Kind::literal, take().text, 0, {}};
      case Token::Kind::name:
        return Expr{Expr::Kind::name, take().text, 0, {}};
      case Token::Kind::op:
        if (t.text == "(") {
          take();
          Expr inner = expr();
          if (!is_op(")")) fail("expected ')' but found", peek());
          take();
          return inner;
        }
        fail("unexpected operator", t);
      case Token::Kind::end:
        fail("unexpected", t);
    }
    fail("unexpected", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void collect_names(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::name) {
    for (const auto& n : out)
      if (n == e.text) return;
    out.push_back(e.text);
  }
  for (const auto& a : e.args) collect_names(a, out);
}

}  // namespace

Expr parse_expression(std::string_view source) { return Parser(tokenize(source)).parse(); }

std::vector<std::string> referenced_names(const Expr& e) {
  std::vector<std::string> out;
  collect_names(e, out);
  return out;
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text[0])) return false;
  try {
    auto toks = tokenize(text);
    return toks.size() == 2 && toks[0].kind == Token::Kind::name && toks[0].text == text;
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace rhi
