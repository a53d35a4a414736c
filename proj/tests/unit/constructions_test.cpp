#include <gtest/gtest.h>

#include <cmath>

#include "assocnorm/constructions.hpp"

using namespace assocnorm;

namespace {

const EquilibriumSolution& linear() {
  static const EquilibriumSolution sol(WeightPair(Weight::unit(), Weight::power(1.0), 2.0));
  return sol;
}

}  // namespace

TEST(Oscillator, BlocksHaveZeroMean) {
  for (auto mode : {DensityMode::raw, DensityMode::normalized}) {
    OscillatorOptions o;
    o.mode = mode;
    const auto osc = oscillator(fn::hat(1, 1.5, 2), 1.0, 2.0, 0.05, linear(), o);
    EXPECT_LT(oscillator_block_imbalance(osc, linear()), 1e-10);
    EXPECT_EQ(osc.plan.alphas.size(), osc.plan.n + 1);
    EXPECT_EQ(osc.plan.alphas.front(), 1.0);
    EXPECT_EQ(osc.plan.alphas.back(), 2.0);
  }
}

TEST(Oscillator, BlockCountFromEpsilon) {
  const auto osc = oscillator(fn::constant_on(1, 2, 1.0), 1.0, 2.0, 0.01, linear());
  const double need = osc.plan.kernel_factor * osc.plan.mu_total / 0.01;
  EXPECT_EQ(osc.plan.n, static_cast<std::size_t>(std::floor(need)) + 1);
  EXPECT_LE(weak_norm(osc.g, linear(), {}).value, 0.01);
}

TEST(Oscillator, AmplitudeIsOneInNormalizedMode) {
  const auto osc = oscillator(fn::constant_on(1, 2, 1.0), 1.0, 2.0, 0.1, linear());
  for (double x : {1.01, 1.37, 1.99}) EXPECT_DOUBLE_EQ(std::abs(osc.g(x)), 1.0);
}

TEST(Oscillator, ZeroAmplitudeGivesZero) {
  const auto osc = oscillator(fn::zero(), 1.0, 2.0, 0.1, linear());
  EXPECT_TRUE(osc.g.is_zero());
  EXPECT_EQ(osc.plan.n, 1u);
}

TEST(Oscillator, BudgetExceeded) {
  OscillatorOptions o;
  o.max_blocks = 100;
  try {
    (void)oscillator(fn::constant_on(1, 2, 1.0), 1.0, 2.0, 1e-4, linear(), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::block_budget_exceeded);
  }
}

TEST(Extremal, PairingEqualsBlockSum) {
  const EtaGrid grid = build_eta_grid(linear(), 4);
  const auto g = fn::hat(1.0, 1.3, 2.5);
  for (int delta : {0, 1}) {
    for (int i : {1, 2}) {
      const auto F = extremal_F(g, linear(), grid, delta, i, 2);
      const Interval s = *F.support();
      std::vector<double> bps = F.breakpoints();
      const double lhs =
          integrate([&](double x) { return g(x) * F(x); }, s.lo, s.hi, {}, bps).value;
      const double rhs = extremal_block_sum(g, linear(), grid, delta, i, 2);
      EXPECT_NEAR(lhs, rhs, 1e-8 * rhs) << "delta=" << delta << " i=" << i;
    }
  }
}

TEST(Extremal, NeedsGridMargin) {
  const EtaGrid grid = build_eta_grid(linear(), 2);
  EXPECT_THROW(extremal_F(fn::indicator(1, 2), linear(), grid, 0, 1, 2), Error);
}

TEST(SmoothToG, DerivativeOfPlateau) {
  const auto phi = fn::plateau(1, 3, 0.5, 2.0);
  const auto g = smooth_to_g(phi);
  EXPECT_DOUBLE_EQ(g(1.25), phi.derivative(1.25));
  const double total = integrate(g, 1.0, 3.0, {}, g.breakpoints()).value;
  EXPECT_NEAR(total, 0.0, 1e-12);
  EXPECT_THROW(smooth_to_g(fn::from_callable([](double) { return 1.0; }, "one")), Error);
}

TEST(Witness, HarmonicPartialSums) {
  const auto f = fn::from_callable([](double) { return 1.0; }, "one");
  std::vector<Interval> segs;
  for (int k = 0; k < 6; ++k) segs.push_back({1.0 + k, 1.5 + k});
  const Witness w = witness_unbounded(f, segs, linear(), 6);
  double h = 0.0;
  for (int k = 1; k <= 6; ++k) h += 1.0 / k;
  EXPECT_NEAR(w.partial_pairings.back(), h, 1e-8);
  for (const auto& t : w.terms) EXPECT_LT(t.weak, t.target);
  EXPECT_LE(w.weak_total, 1.0);
}

TEST(Witness, RejectsSegmentWhereFVanishes) {
  std::vector<Interval> segs{{1.0, 1.5}, {5.0, 5.5}};
  try {
    (void)witness_unbounded(fn::indicator(0.5, 2.0), segs, linear(), 2);
    FAIL();
  } catch (const SegmentRejected& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Witness, Targets) {
  EXPECT_DOUBLE_EQ(witness_target(TargetSequence::geometric, 3), 0.125);
  double s = 0.0;
  for (std::size_t k = 1; k <= 100000; ++k) s += witness_target(TargetSequence::inverse_square, k);
  EXPECT_LT(s, 1.0);
}

TEST(Corpus, DeterministicAndCompact) {
  const auto a = hat_corpus();
  const auto b = hat_corpus();
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label(), b[i].label());
    ASSERT_TRUE(a[i].support());
    EXPECT_GE(a[i].support()->lo, 0.5);
    EXPECT_LE(a[i].support()->hi, 4.0);
    EXPECT_NEAR(a[i](a[i].support()->lo), 0.0, 1e-12);
    EXPECT_TRUE(a[i].has_derivative());
  }
  CorpusSpec other;
  other.seed = 7;
  EXPECT_NE(g_corpus(other)[1].label(), g_corpus()[1].label());
}
