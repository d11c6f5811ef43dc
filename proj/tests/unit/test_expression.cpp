#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sesqui/error.hpp"
#include "sesqui/expression.hpp"

namespace sesqui {
namespace {

TEST(Expression, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(Expression::parse("1+2*3").evaluate(0.0), 7.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2").evaluate(0.0), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-2^2").evaluate(0.0), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("8/4/2").evaluate(0.0), 1.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(1+2)*3").evaluate(0.0), 9.0);
  EXPECT_DOUBLE_EQ(Expression::parse("t^2 - 3*t").evaluate(2.0), -2.0);
  EXPECT_DOUBLE_EQ(Expression::parse("1e-3*t").evaluate(2.0), 2e-3);
}

TEST(Expression, Functions) {
  const double t = 0.4;
  EXPECT_DOUBLE_EQ(Expression::parse("sin(2*t)").evaluate(t), std::sin(2 * t));
  EXPECT_DOUBLE_EQ(Expression::parse("cos(pi*t)").evaluate(t), std::cos(std::numbers::pi * t));
  EXPECT_DOUBLE_EQ(Expression::parse("exp(t)").evaluate(t), std::exp(t));
  EXPECT_DOUBLE_EQ(Expression::parse("sqrt(t+1)").evaluate(t), std::sqrt(t + 1));
  EXPECT_NEAR(Expression::parse("(t+1)^0.5").evaluate(t), std::sqrt(t + 1), 1e-15);
}

TEST(Expression, ParameterDependence) {
  EXPECT_FALSE(Expression::parse("2*pi+sin(1)").depends_on_parameter());
  EXPECT_TRUE(Expression::parse("0*t").depends_on_parameter());
}

TEST(Expression, ErrorsReportColumn) {
  struct Case {
    const char* text;
    std::size_t column;
  };
  for (const Case c : {Case{"1 +", 3}, Case{"sin(t", 5}, Case{"2 * * t", 4}, Case{"tan(t)", 0}, Case{"t)", 1},
                       Case{"", 0}, Case{"3 $", 2}}) {
    try {
      Expression::parse(c.text);
      FAIL() << "no error for '" << c.text << "'";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), c.column) << c.text << ": " << e.what();
    }
  }
}

TEST(Expression, DomainErrorsAtEvaluation) {
  EXPECT_THROW(Expression::parse("1/t").evaluate(0.0), DomainError);
  EXPECT_THROW(Expression::parse("(t-1)^0.5").evaluate(0.0), DomainError);
}

}  // namespace
}  // namespace sesqui
