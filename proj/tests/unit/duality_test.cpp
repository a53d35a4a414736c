#include <gtest/gtest.h>

#include <cmath>

#include "assocnorm/duality.hpp"

using namespace assocnorm;

namespace {

const EquilibriumSolution& linear() {
  static const EquilibriumSolution sol(WeightPair(Weight::unit(), Weight::power(1.0), 2.0));
  return sol;
}

}  // namespace

TEST(Pairing, ZeroAndClosedForm) {
  EXPECT_EQ(pairing(fn::zero(), fn::indicator(1, 2)).value, 0.0);
  EXPECT_EQ(pairing(fn::hat(1, 2, 3), fn::zero()).value, 0.0);
  // ∫_1^2 (x − 1) dx
  EXPECT_NEAR(pairing(fn::hat(1, 2, 3), fn::indicator(1, 2)).value, 0.5, 1e-14);
  EXPECT_EQ(pairing(fn::indicator(1, 2), fn::indicator(3, 4)).value, 0.0);
}

TEST(Pairing, OscillatorAgainstInverseV1Vanishes) {
  const auto osc = oscillator(fn::constant_on(1, 2, 1.0), 1.0, 2.0, 0.05, linear());
  const auto inv = HalfLineFunction([](double x) { return 1.0 / linear().V1(x); }, std::nullopt,
                                    Interval{1.0, 2.0}, {}, "1/V1");
  EXPECT_NEAR(pairing(inv, osc.g).value, 0.0, 1e-9);
}

TEST(EstimateJ, GrowingFamilyNeverDecreases) {
  const auto f = fn::hat(1, 2, 3);
  const auto gs = g_corpus();
  double prev = 0.0;
  std::vector<HalfLineFunction> fam;
  for (const auto& g : gs) {
    fam.push_back(g);
    const auto r = estimate_J(f, fam, linear());
    EXPECT_GE(r.J_lower, prev);
    EXPECT_LE(r.J_lower, r.holder_upper);
    prev = r.J_lower;
  }
  EXPECT_GT(prev, 0.0);
  EXPECT_THROW(estimate_J(f, std::vector<HalfLineFunction>{}, linear()), Error);
  EXPECT_EQ(estimate_J(fn::zero(), gs, linear()).J_lower, 0.0);
}

TEST(Embedding, ZeroConventionAndFiniteRatio) {
  EXPECT_EQ(verify_embedding(fn::zero(), linear()), 0.0);
  const double r = verify_embedding(fn::indicator(1, 2), linear());
  EXPECT_GT(r, 0.0);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_NEAR(verify_embedding(fn::indicator(1, 2), linear(), QuadratureSpec{}.tightened(10)), r,
              0.01 * r);
}

TEST(Divergence, NoWitnessForZero) {
  try {
    (void)verify_strong_of_weak_zero(fn::zero(), {0.1}, linear());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::no_witness_segment);
  }
}

TEST(Divergence, RatioLinearInMass) {
  const Interval seg{1.0, 2.0};
  const auto a = verify_strong_of_weak_zero(fn::constant_on(1, 2, 1.0), {0.1, 0.01}, linear(), {}, seg);
  const auto b = verify_strong_of_weak_zero(fn::constant_on(1, 2, 2.0), {0.1, 0.01}, linear(), {}, seg);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_NEAR(b.rows[i].ratio / a.rows[i].ratio, 2.0, 1e-9);
  }
  EXPECT_TRUE(a.unbounded());
}

TEST(Hardy, BoundsOnEveryCell) {
  for (double p : {1.5, 2.0, 3.0}) {
    const EquilibriumSolution sol(WeightPair(Weight::unit(), Weight::power(1.0), p));
    const EtaGrid grid = build_eta_grid(sol, 2);
    for (int k = -1; k <= 2; ++k) {
      const auto h = hardy_constants(sol, grid, k);
      EXPECT_LE(h.A1, 1.0 + 1e-6);
      EXPECT_LE(h.A2, 1.0 + 1e-6);
      EXPECT_LE(h.AA1_p, 1.0 / (p - 1.0) + 1e-6);
      EXPECT_LE(h.AA2_p, 1.0 / (p - 1.0) + 1e-6);
      EXPECT_GT(h.t_A1, grid[k - 1]);
      EXPECT_LT(h.t_A1, grid[k]);
    }
  }
}

TEST(Hardy, CellOutsideGridRejected) {
  const EtaGrid grid = build_eta_grid(linear(), 1);
  EXPECT_THROW(hardy_constants(linear(), grid, -1), Error);
}

TEST(Reflexivity, ZeroFunctionReportsZeros) {
  const auto r = verify_reflexivity({fn::zero()}, linear(), {});
  ASSERT_EQ(r.reports.size(), 1u);
  EXPECT_EQ(r.reports[0].J_lower, 0.0);
  EXPECT_EQ(r.sandwich_ratio(), 0.0);
}

TEST(Reflexivity, FamilyIsScaleInvariant) {
  const auto f = fn::hat(1, 2, 3);
  const auto a = estimate_J(f, reflexivity_family(f, linear()), linear());
  const auto b = estimate_J(fn::scale(f, 2.0), reflexivity_family(fn::scale(f, 2.0), linear()), linear());
  EXPECT_NEAR(b.J_lower / a.J_lower, 2.0, 1e-8);
  EXPECT_NEAR(b.lower_constant(), a.lower_constant(), 1e-8);
}

TEST(Suites, UnknownNameRejected) {
  SuiteContext ctx{linear()};
  EXPECT_THROW(run_suite("nope", ctx), Error);
  const auto rows = run_suite("identity", ctx);
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_TRUE(r.passed) << r.check;
}
