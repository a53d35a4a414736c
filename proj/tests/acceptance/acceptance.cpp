// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "assocnorm/assocnorm.hpp"

using namespace assocnorm;

namespace {

// tolerances and budgets
constexpr double kWindowTol = 1e-8;
constexpr double kWindowSeconds = 1.0;
constexpr double kIdentityTol = 1e-6;
constexpr double kIdentityStep = 1e-5;
constexpr double kIdentitySeconds = 5.0;
constexpr double kStrongTol = 1e-6;
constexpr double kHardySlack = 1e-6;
constexpr int kHardyCells = 4;
constexpr double kBlockLo = 0.01;
constexpr double kBlockHi = 100.0;
constexpr double kDrift = 0.01;
constexpr double kImbalanceTol = 1e-10;
constexpr double kSlopeTol = 0.05;
constexpr double kHolderCeiling = 10.0;
constexpr double kEmbeddingCeiling = 10.0;
constexpr double kReflexivitySeconds = 300.0;
constexpr double kGrowthLo = 8.0;
constexpr double kGrowthHi = 12.0;
constexpr double kDensityTarget = 1e-3;
constexpr int kDensityGrid = 16;
constexpr double kHarmonicTol = 1e-3;
constexpr double kWitnessWeakCeiling = 1.0;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs a criterion, turning exceptions into a failing line.
void criterion(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

WeightPair linear_pair(double p = 2.0) { return WeightPair(Weight::unit(), Weight::power(1.0), p); }
WeightPair unit_pair() { return WeightPair(Weight::unit(), Weight::unit(), 2.0); }

EquilibriumSolution unit_solution() {
  EquilibriumOptions o;
  o.require_s6 = false;
  return EquilibriumSolution(unit_pair(), o);
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return out;
}

std::string rows_detail(const std::vector<CheckRow>& rows, bool& ok) {
  ok = !rows.empty();
  std::string d;
  for (const auto& r : rows) {
    ok = ok && r.passed;
    d += r.check + "=" + fmt("%.4g", r.metric) + (r.passed ? " " : "(x) ");
  }
  return d;
}

}  // namespace

int main() {
  const EquilibriumSolution lin(linear_pair());

  criterion(1, "equilibrium-closed-forms", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const Window w = solve_window(linear_pair(), 1.0);
    double err = std::max(std::abs(w.a - (5.0 - std::sqrt(5.0)) / 4.0),
                          std::abs(w.b - (5.0 + std::sqrt(5.0)) / 4.0));
    for (double t : logspace(0.5, 100.0, 20)) {
      const Window u = solve_window(unit_pair(), t);
      err = std::max({err, std::abs(u.a - (t - 0.5)), std::abs(u.b - (t + 0.5))});
    }
    const double s = seconds_since(t0);
    report(1, "equilibrium-closed-forms", err < kWindowTol && s < kWindowSeconds,
           "max_err=" + fmt("%.3g", err) + " time=" + fmt("%.3fs", s));
  });

  criterion(2, "differential-identity", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double t : logspace(1e-2, 1e2, 100)) worst = std::max(worst, check_identity(lin, t, kIdentityStep));
    // unit weights have windows only for t >= 1/2
    const auto unit = unit_solution();
    for (double t : logspace(0.5 + 2 * kIdentityStep, 1e2, 100)) {
      worst = std::max(worst, check_identity(unit, t, kIdentityStep));
    }
    const double s = seconds_since(t0);
    report(2, "differential-identity", worst < kIdentityTol && s < kIdentitySeconds,
           "worst=" + fmt("%.3g", worst) + " time=" + fmt("%.3fs", s));
  });

  criterion(3, "strong-norm-oracle", [&] {
    const double v = strong_norm(fn::indicator(1.0, 2.0), unit_solution(), {}).value;
    const double err = std::abs(v - std::sqrt(5.0 / 24.0));
    report(3, "strong-norm-oracle", err < kStrongTol, "value=" + fmt("%.12f", v) + " err=" + fmt("%.3g", err));
  });

  criterion(4, "hardy-constants", [&] {
    bool ok = true;
    double worstA = 0.0, worstAA = 0.0, worstWin = 0.0;
    for (double p : {1.5, 2.0, 3.0}) {
      const EquilibriumSolution sol(linear_pair(p));
      const EtaGrid grid = build_eta_grid(sol, kHardyCells + 1);
      for (int k = -kHardyCells; k <= kHardyCells; ++k) {
        const auto h = hardy_constants(sol, grid, k);
        const double bound = 1.0 / (p - 1.0);
        ok = ok && h.A1 <= 1.0 + kHardySlack && h.A2 <= 1.0 + kHardySlack &&
             h.AA1_p <= bound + kHardySlack && h.AA2_p <= bound + kHardySlack;
        worstA = std::max({worstA, h.A1, h.A2});
        worstAA = std::max({worstAA, h.AA1_p / bound, h.AA2_p / bound});
      }
      for (double t : logspace(grid[-kHardyCells], grid[kHardyCells], 100)) {
        const auto wc = window_constant(sol, t);
        ok = ok && wc.A_a <= 1.0 + kHardySlack && wc.A_b <= 1.0 + kHardySlack;
        worstWin = std::max({worstWin, wc.A_a, wc.A_b});
      }
    }
    report(4, "hardy-constants", ok,
           "max_A=" + fmt("%.4f", worstA) + " max_AA/bound=" + fmt("%.4f", worstAA) +
               " max_window=" + fmt("%.4f", worstWin));
  });

  criterion(5, "block-norm-equivalence", [&] {
    const EtaGrid grid = build_eta_grid(lin, 4);
    const QuadratureSpec fine = QuadratureSpec{}.tightened(10.0);
    double lo = INFINITY, hi = 0.0, drift = 0.0;
    for (const auto& g : g_corpus()) {
      const double r = block_norm(g, lin, grid, {}).value / weak_norm(g, lin, {}).value;
      const double rf = block_norm(g, lin, grid, fine).value / weak_norm(g, lin, fine).value;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      drift = std::max(drift, std::abs(rf / r - 1.0));
    }
    report(5, "block-norm-equivalence", lo >= kBlockLo && hi <= kBlockHi && drift < kDrift,
           "ratio=[" + fmt("%.4f", lo) + "," + fmt("%.4f", hi) + "] drift=" + fmt("%.3g", drift));
  });

  criterion(6, "oscillator", [&] {
    double imbalance = 0.0;
    double worstC = 0.0;
    const std::vector<HalfLineFunction> hs{fn::constant_on(1, 2, 1.0), fn::hat(1, 1.5, 2),
                                           fn::quartic_bump(1, 2, 2.0)};
    for (const auto& h : hs) {
      for (double eps : {1e-1, 3e-2, 1e-2}) {
        const auto osc = oscillator(h, 1.0, 2.0, eps, lin);
        imbalance = std::max(imbalance, oscillator_block_imbalance(osc, lin));
        worstC = std::max(worstC, weak_norm(osc.g, lin, {}).value / eps);
      }
    }
    std::vector<double> xs, ys;
    for (std::size_t n : {8u, 16u, 32u, 64u}) {
      OscillatorOptions o;
      o.n_override = n;
      const auto osc = oscillator(fn::constant_on(1, 2, 1.0), 1.0, 2.0, 1.0, lin, o);
      imbalance = std::max(imbalance, oscillator_block_imbalance(osc, lin));
      xs.push_back(std::log(double(n)));
      ys.push_back(std::log(weak_norm(osc.g, lin, {}).value));
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 4; ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    report(6, "oscillator",
           imbalance < kImbalanceTol && std::abs(slope + 1.0) <= kSlopeTol && worstC <= kOscillatorConstant,
           "imbalance=" + fmt("%.3g", imbalance) + " slope=" + fmt("%.4f", slope) +
               " max_weak/eps=" + fmt("%.4f", worstC) + " C_impl=" + fmt("%.2f", kOscillatorConstant));
  });

  criterion(7, "hoelder", [&] {
    const auto fs = hat_corpus();
    const auto gs = g_corpus();
    const double r = holder_ratio(fs, gs, lin, {});
    const double rf = holder_ratio(fs, gs, lin, QuadratureSpec{}.tightened(10.0));
    const double drift = std::abs(rf / r - 1.0);
    report(7, "hoelder", std::isfinite(r) && r <= kHolderCeiling && drift < kDrift,
           "max_ratio=" + fmt("%.4f", r) + " drift=" + fmt("%.3g", drift));
  });

  criterion(8, "embedding", [&] {
    const EquilibriumSolution second(WeightPair(Weight::power(0.5), Weight::power(1.5), 2.0));
    double worst = 0.0;
    bool finite = true;
    for (const EquilibriumSolution* sol : {&lin, &second}) {
      for (const auto& g : g_corpus()) {
        const double r = verify_embedding(g, *sol);
        finite = finite && std::isfinite(r);
        worst = std::max(worst, r);
      }
    }
    report(8, "embedding", finite && worst <= kEmbeddingCeiling,
           "max_ratio=" + fmt("%.4f", worst) + " families=(1,x),(x^0.5,x^1.5)");
  });

  criterion(9, "reflexivity-sandwich", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    const std::string d = rows_detail(run_suite("reflexivity", SuiteContext{lin}), ok);
    const double s = seconds_since(t0);
    report(9, "reflexivity-sandwich", ok && s < kReflexivitySeconds, d + "time=" + fmt("%.1fs", s));
  });

  criterion(10, "weak-zero-divergence", [&] {
    const auto table = verify_strong_of_weak_zero(fn::constant_on(1.0, 2.0, 1.0), {1e-1, 1e-2, 1e-3}, lin);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      const double g = table.rows[i].ratio / table.rows[i - 1].ratio;
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    report(10, "weak-zero-divergence", lo >= kGrowthLo && hi <= kGrowthHi,
           "growth=[" + fmt("%.3f", lo) + "," + fmt("%.3f", hi) + "] slope=" + fmt("%.4f", table.slope));
  });

  criterion(11, "density", [&] {
    const auto g = fn::from_callable(
        [](double x) {
          const double l = std::log(x);
          return std::exp(-l * l);
        },
        "lognormal");
    const EtaGrid grid = build_eta_grid(lin, kDensityGrid);
    std::vector<int> Ns;
    for (int N = 1; N <= kDensityGrid; ++N) Ns.push_back(N);
    const auto tail = truncation_tail(g, lin, grid, Ns);
    bool monotone = true;
    for (std::size_t i = 1; i < tail.size(); ++i) monotone = monotone && tail[i] <= tail[i - 1];
    const auto hit = std::find_if(tail.begin(), tail.end(), [](double v) { return v < kDensityTarget; });
    const std::string where = hit == tail.end() ? "none" : std::to_string(Ns[hit - tail.begin()]);
    report(11, "density", monotone && hit != tail.end(),
           "tail(N=1)=" + fmt("%.4g", tail.front()) + " tail(N=" + std::to_string(kDensityGrid) +
               ")=" + fmt("%.3g", tail.back()) + " first_N_below=" + where);
  });

  criterion(12, "harmonic-witness", [&] {
    std::vector<Interval> segs;
    for (int k = 0; k < 10; ++k) segs.push_back({1.0 + k, 2.0 + k});
    const auto w = witness_unbounded(fn::from_callable([](double) { return 1.0; }, "one"), segs, lin, 10);
    const double H10 = 7381.0 / 2520.0;
    const double partial = w.partial_pairings.back();
    const double lower = w.partial_lower_pairings.back();
    const bool ok = std::abs(lower - 2.9290) <= kHarmonicTol && partial >= lower - kHarmonicTol &&
                    w.weak_total <= kWitnessWeakCeiling;
    report(12, "harmonic-witness", ok,
           "H10=" + fmt("%.6f", H10) + " lower=" + fmt("%.6f", lower) + " pairing=" + fmt("%.6f", partial) +
               " weak=" + fmt("%.4f", w.weak_total));
  });

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
