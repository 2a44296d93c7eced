#include "rhi/expression.hpp"

#include <gtest/gtest.h>

using namespace rhi;

namespace {

/// Integer ring where every name evaluates to 10.
struct IntRing {
  long long literal(const std::string& t) const { return std::stoll(t); }
  long long name(const std::string&) const { return 10; }
  long long one() const { return 1; }
  long long add(long long a, long long b) const { return a + b; }
  long long sub(long long a, long long b) const { return a - b; }
  long long mul(long long a, long long b) const { return a * b; }
  long long neg(long long a) const { return -a; }
};

long long eval(const std::string& s) { return evaluate(parse_expression(s), IntRing{}); }

}  // namespace

TEST(Expression, Precedence) {
  EXPECT_EQ(eval("1 + 2*3"), 7);
  EXPECT_EQ(eval("(1 + 2)*3"), 9);
  EXPECT_EQ(eval("2*x^2"), 200);
  EXPECT_EQ(eval("-x + 3"), -7);
  EXPECT_EQ(eval("x^0"), 1);
  EXPECT_EQ(eval("2 - 3 - 4"), -5);
}

TEST(Expression, RationalLiteralsAreOneToken) {
  const Expr e = parse_expression("1/2*x");
  ASSERT_EQ(e.kind, Expr::Kind::mul);
  EXPECT_EQ(e.args[0].kind, Expr::Kind::literal);
  EXPECT_EQ(e.args[0].text, "1/2");
}

TEST(Expression, ReferencedNames) {
  const auto names = referenced_names(parse_expression("x*y + x^2 - z[1]"));
  ASSERT_EQ(names.size(), 3u);
  EXPECT_EQ(names[0], "x");
  EXPECT_EQ(names[1], "y");
  EXPECT_EQ(names[2], "z[1]");
}

TEST(Expression, Errors) {
  EXPECT_THROW(parse_expression("x^"), ParseError);
  EXPECT_THROW(parse_expression("(x + y"), ParseError);
  EXPECT_THROW(parse_expression("x + * y"), ParseError);
  EXPECT_THROW(parse_expression(""), ParseError);
  EXPECT_THROW(parse_expression("x $ y"), ParseError);
  try {
    parse_expression("x^");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 1u);  // the dangling caret
  }
}
