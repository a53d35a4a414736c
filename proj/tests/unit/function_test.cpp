#include <gtest/gtest.h>

#include <cmath>

#include "assocnorm/function.hpp"

using namespace assocnorm;

TEST(Function, ZeroByDefault) {
  const HalfLineFunction z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z(3.0), 0.0);
  EXPECT_EQ(z.derivative(3.0), 0.0);
}

TEST(Function, SupportMasksValues) {
  const auto h = fn::hat(1.0, 2.0, 3.0);
  EXPECT_EQ(h(0.5), 0.0);
  EXPECT_DOUBLE_EQ(h(1.5), 0.5);
  EXPECT_DOUBLE_EQ(h(2.0), 1.0);
  EXPECT_EQ(h(3.5), 0.0);
  EXPECT_TRUE(support_consistent(h));
}

TEST(Function, MissingDerivativeThrows) {
  const auto f = fn::from_callable([](double x) { return x; }, "id");
  try {
    (void)f.derivative(1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::derivative_required);
  }
}

TEST(Function, LinearCombinationMergesSupportsAndBreakpoints) {
  const auto f = fn::linear_combination({fn::indicator(1, 2), fn::hat(3, 4, 5)}, {2.0, -1.0}, "c");
  EXPECT_DOUBLE_EQ(f(1.5), 2.0);
  EXPECT_DOUBLE_EQ(f(4.0), -1.0);
  ASSERT_TRUE(f.support());
  EXPECT_EQ(f.support()->lo, 1.0);
  EXPECT_EQ(f.support()->hi, 5.0);
  EXPECT_EQ(f.breakpoints().size(), 5u);
  EXPECT_DOUBLE_EQ(f.derivative(3.5), -1.0);
}

TEST(Function, PlateauDerivativeMatchesDifferences) {
  const auto p = fn::plateau(1.0, 3.0, 0.4, 2.0);
  for (double x : {1.1, 1.3, 2.0, 2.7, 2.95}) {
    const double h = 1e-6;
    EXPECT_NEAR(p.derivative(x), (p(x + h) - p(x - h)) / (2 * h), 1e-5);
  }
  EXPECT_DOUBLE_EQ(p(2.0), 2.0);
}

TEST(Function, QuarticBumpIsC1) {
  const auto b = fn::quartic_bump(1.0, 3.0);
  EXPECT_DOUBLE_EQ(b(2.0), 1.0);
  EXPECT_NEAR(b.derivative(1.0), 0.0, 1e-14);
  EXPECT_NEAR(b.derivative(3.0), 0.0, 1e-14);
}

TEST(Function, RestrictAndTabulate) {
  const auto f = fn::restrict_to(fn::hat(1, 2, 3), 1.5, 4.0);
  EXPECT_EQ(f(1.2), 0.0);
  EXPECT_DOUBLE_EQ(f(2.5), 0.5);
  const auto t = fn::tabulate(fn::quartic_bump(1, 3), 400);
  for (double x : {1.3, 2.0, 2.71}) EXPECT_NEAR(t(x), fn::quartic_bump(1, 3)(x), 1e-4);
  EXPECT_THROW(fn::tabulate(fn::from_callable([](double) { return 1.0; }, "one"), 10), Error);
}

TEST(Function, PiecewiseLinearRejectsBadNodes) {
  EXPECT_THROW(fn::piecewise_linear({1, 1}, {0, 0}), Error);
  EXPECT_THROW(fn::piecewise_linear({1, 2}, {0}), Error);
}
