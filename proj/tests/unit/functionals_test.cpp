#include <gtest/gtest.h>

#include <cmath>

#include "assocnorm/constructions.hpp"

using namespace assocnorm;

namespace {

const EquilibriumSolution& linear() {
  static const EquilibriumSolution sol(WeightPair(Weight::unit(), Weight::power(1.0), 2.0));
  return sol;
}

EquilibriumSolution unit() {
  EquilibriumOptions o;
  o.require_s6 = false;
  return EquilibriumSolution(WeightPair(Weight::unit(), Weight::unit(), 2.0), o);
}

}  // namespace

TEST(Sobolev, HatWithUnitWeights) {
  const auto r = sobolev_norm(fn::hat(1, 2, 3), WeightPair(Weight::unit(), Weight::unit(), 2.0), {});
  EXPECT_NEAR(r.value, std::sqrt(2.0 / 3.0) + std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(r.component("v1_df"), std::sqrt(2.0), 1e-10);
}

TEST(Sobolev, NumericDerivativeWarns) {
  const auto f = fn::from_callable([](double x) { return std::exp(-x * x); }, "gauss");
  const auto r = sobolev_norm(f, WeightPair(Weight::unit(), Weight::unit(), 2.0), {});
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_THROW(sobolev_norm(f, WeightPair(Weight::unit(), Weight::unit(), 2.0), {}, false), Error);
}

TEST(StrongNorm, IndicatorUnderUnitGeometry) {
  const auto r = strong_norm(fn::indicator(1, 2), unit(), {});
  EXPECT_NEAR(r.value, std::sqrt(5.0 / 24.0), 1e-9);
  EXPECT_NEAR(remark_unit_norm(fn::indicator(1, 2), 2.0, {}).component("term1"), r.value, 1e-9);
}

TEST(WeakNorm, ZeroIsZero) {
  EXPECT_EQ(weak_norm(fn::zero(), linear(), {}).value, 0.0);
  EXPECT_EQ(strong_norm(fn::zero(), linear(), {}).value, 0.0);
}

TEST(WeakNorm, ComponentsAddUp) {
  const auto r = weak_norm(fn::indicator(1, 2), linear(), {});
  EXPECT_NEAR(r.value, r.component("G_frak") + r.component("G_cal"), 1e-14);
  EXPECT_GT(r.component("G_frak"), 0.0);
}

TEST(WeakNorm, AbsoluteHomogeneity) {
  for (const auto& g : g_corpus()) {
    const double base = weak_norm(g, linear(), {}).value;
    for (double c : {-3.0, 0.5, 7.0}) {
      EXPECT_NEAR(weak_norm(fn::scale(g, c), linear(), {}).value, std::abs(c) * base,
                  1e-8 * std::abs(c) * base);
    }
  }
}

TEST(WeakNorm, TriangleInequality) {
  const auto gs = g_corpus();
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
    const double lhs = weak_norm(fn::sum(gs[i], gs[i + 1]), linear(), {}).value;
    const double rhs = weak_norm(gs[i], linear(), {}).value + weak_norm(gs[i + 1], linear(), {}).value;
    EXPECT_LE(lhs, rhs * (1 + 1e-9));
  }
}

TEST(WeakNorm, StrongDominatesOnNonnegative) {
  // for g >= 0 the |g| kernel bounds the signed one
  const auto g = fn::hat(1, 2, 3);
  EXPECT_GT(strong_norm(g, linear(), {}).value, 0.0);
}

TEST(BlockNorm, ComparableToWeakNorm) {
  const EtaGrid grid = build_eta_grid(linear(), 4);
  const auto r = block_norm(fn::indicator(1, 2), linear(), grid, {});
  const double w = weak_norm(fn::indicator(1, 2), linear(), {}).value;
  EXPECT_GT(r.value / w, 0.1);
  EXPECT_LT(r.value / w, 10.0);
  bool k0 = false;
  for (const auto& b : r.blocks) k0 = k0 || (b.k == 0 && b.value > 0.0);
  EXPECT_TRUE(k0);
}

TEST(Truncate, KeepsInsideGrid) {
  const EtaGrid grid = build_eta_grid(linear(), 2);
  const auto g = fn::from_callable([](double) { return 1.0; }, "one");
  const auto t = truncate(g, grid, 1);
  EXPECT_EQ(t(grid[-1] * 0.99), 0.0);
  EXPECT_EQ(t(1.0), 1.0);
  EXPECT_EQ(t(grid[1] * 1.01), 0.0);
}

TEST(DualNorm, IndicatorWithUnitWeight) {
  EXPECT_NEAR(dual_lp_norm(fn::indicator(1, 3, 2.0), Weight::unit(), 2.0, {}), std::sqrt(8.0), 1e-10);
}
