#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "assocnorm/quadrature.hpp"

using namespace assocnorm;

TEST(Quadrature, PolynomialIsExact) {
  const auto r = integrate([](double x) { return 3 * x * x - 2 * x + 1; }, 0.0, 2.0, {});
  EXPECT_NEAR(r.value, 8.0 - 4.0 + 2.0, 1e-13);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
  auto f = [](double x) { return std::exp(x); };
  EXPECT_NEAR(integrate(f, 1.0, 0.0, {}).value, -(std::exp(1.0) - 1.0), 1e-12);
  EXPECT_EQ(integrate(f, 1.0, 1.0, {}).value, 0.0);
}

TEST(Quadrature, BreakpointsResolveJumps) {
  auto step = [](double x) { return x < 0.3 ? 1.0 : -2.0; };
  const double bp[] = {0.3};
  const auto r = integrate(step, 0.0, 1.0, {}, bp);
  EXPECT_NEAR(r.value, 0.3 - 1.4, 1e-14);
  EXPECT_LE(r.panels, 4u);
}

TEST(Quadrature, EndpointSingularityConverges) {
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {});
  EXPECT_NEAR(r.value, 2.0, 1e-7);
}

TEST(Quadrature, TolerancesBelowRoundingStillTerminate) {
  QuadratureSpec q;
  q.abs_tol = 1e-30;
  q.rel_tol = 1e-30;
  // integral is zero, so no relative target can be met
  const auto r = integrate([](double x) { return std::sin(x); }, -1.0, 1.0, q);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
  EXPECT_LT(r.panels, 200000u);
}

TEST(Quadrature, NonFiniteEndpointRejected) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, INFINITY, {}), Error);
}

TEST(Quadrature, TightenedDividesTolerances) {
  QuadratureSpec q;
  const auto t = q.tightened(10.0);
  EXPECT_DOUBLE_EQ(t.abs_tol, q.abs_tol / 10.0);
  EXPECT_DOUBLE_EQ(t.rel_tol, q.rel_tol / 10.0);
}

TEST(PanelCumulative, MatchesDirectIntegralAndIsAdditive) {
  auto f = [](double x) { return std::array<double, 2>{std::cos(x), x * x}; };
  const PanelCumulative<2> C(f, 0.0, 3.0, {}, {});
  for (double y : {0.0, 0.5, 1.7, 3.0}) {
    EXPECT_NEAR(C(y)[0], std::sin(y), 1e-10);
    EXPECT_NEAR(C(y)[1], y * y * y / 3.0, 1e-10);
  }
  EXPECT_NEAR(C(2.0)[0] - C(1.0)[0], std::sin(2.0) - std::sin(1.0), 1e-10);
  EXPECT_NEAR(C.total()[1], 9.0, 1e-10);
}

TEST(PanelCumulative, NondecreasingForNonnegativeIntegrand) {
  auto f = [](double x) { return std::array<double, 1>{std::exp(-x) * x}; };
  const PanelCumulative<1> C(f, 0.0, 10.0, {}, {});
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double v = C(0.05 * i)[0];
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
}
