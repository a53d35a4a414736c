#include "assocnorm/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/tools/roots.hpp>

namespace assocnorm {

namespace {

QuadratureSpec tight(const QuadratureSpec& q) {
  QuadratureSpec t = q;
  t.abs_tol = std::min(q.abs_tol, 1e-15);
  t.rel_tol = std::min(q.rel_tol, 1e-13);
  return t;
}

std::string num(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

/// x in [lo, hi] with M(x) = m for a nondecreasing M.
template <class M>
double invert(const M& mass, double m, double lo, double hi, double tol) {
  auto f = [&](double x) { return mass(x) - m; };
  double flo = f(lo);
  double fhi = f(hi);
  if (flo >= 0.0) return lo;
  if (fhi <= 0.0) return hi;
  boost::uintmax_t iters = 200;
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
  return 0.5 * (r.first + r.second);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<double> inside(const std::vector<double>& xs, double lo, double hi) {
  std::vector<double> out;
  for (double x : xs) {
    if (x > lo && x < hi) out.push_back(x);
  }
  return out;
}

}  // namespace

const char* to_string(DensityMode mode) {
  return mode == DensityMode::raw ? "raw" : "normalized";
}

Oscillator oscillator(const HalfLineFunction& h, double c, double d, double epsilon,
                      const EquilibriumSolution& sol, const OscillatorOptions& options,
                      const QuadratureSpec& quad) {
  require(c > 0.0 && d > c && std::isfinite(d), "oscillator: need 0 < c < d < inf");
  require(epsilon > 0.0, "oscillator: epsilon must be positive");
  const QuadratureSpec q = tight(quad);
  const DensityMode mode = options.mode;
  const EquilibriumSolution s = sol;

  std::vector<double> bps{c, d};
  for (double x : inside(h.breakpoints(), c, d)) bps.push_back(x);
  std::sort(bps.begin(), bps.end());

  auto mu = [h, s, mode](double x) {
    const double a = std::abs(h(x));
    if (a == 0.0 || mode == DensityMode::raw) return std::array<double, 1>{a};
    return std::array<double, 1>{a / s.V1(x)};
  };
  const PanelCumulative<1> M(mu, c, d, bps, q);
  OscillatorPlan plan;
  plan.mode = mode;
  plan.epsilon = epsilon;
  plan.mu_total = M.total()[0];

  const double pc = sol.p_conj();
  const QuadResult kf = integrate(
      [&sol, pc](double x) { return sol.w(x) * std::pow(sol.V1(x), pc); }, c, d, quad);
  plan.kernel_factor = std::pow(kf.value, 1.0 / pc);

  if (!(plan.mu_total > 0.0)) {
    plan.n = 1;
    plan.n_required = 1;
    plan.alphas = {c, d};
    plan.betas = {0.5 * (c + d)};
    return {fn::zero().with_label("oscillator(0)"), plan};
  }

  const double need = plan.kernel_factor * plan.mu_total / epsilon;
  if (!(need < static_cast<double>(options.max_blocks))) {
    fail(ErrorKind::block_budget_exceeded,
         "oscillator needs more than " + std::to_string(options.max_blocks) + " blocks (eps=" +
             num(epsilon) + ")");
  }
  plan.n_required = static_cast<std::size_t>(std::floor(need)) + 1;
  plan.n = options.n_override > 0 ? options.n_override : plan.n_required;
  if (plan.n > options.max_blocks) {
    fail(ErrorKind::block_budget_exceeded,
         "oscillator block count " + std::to_string(plan.n) + " exceeds the limit " +
             std::to_string(options.max_blocks));
  }

  auto mass = [&M](double x) { return M(x)[0]; };
  const double tol = options.inversion_tol * (d - c);
  const double step = plan.mu_total / static_cast<double>(plan.n);
  plan.alphas.assign(plan.n + 1, c);
  plan.alphas.back() = d;
  plan.betas.assign(plan.n, c);
  double prev = c;
  for (std::size_t i = 0; i < plan.n; ++i) {
    if (i > 0) {
      plan.alphas[i] = invert(mass, step * static_cast<double>(i), prev, d, tol);
      prev = plan.alphas[i];
    }
    plan.betas[i] = invert(mass, step * (static_cast<double>(i) + 0.5), prev, d, tol);
    prev = plan.betas[i];
  }

  auto cuts = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(plan.alphas,
                                                                                  plan.betas);
  auto g = [h, s, mode, cuts](double x) {
    const auto& [A, B] = *cuts;
    if (x < A.front() || x > A.back()) return 0.0;
    auto it = std::upper_bound(A.begin(), A.end(), x);
    std::size_t i = static_cast<std::size_t>(it - A.begin());
    i = std::clamp<std::size_t>(i, 1, B.size()) - 1;
    const double sign = x <= B[i] ? 1.0 : -1.0;
    const double amp = std::abs(h(x));
    if (amp == 0.0) return 0.0;
    return sign * (mode == DensityMode::raw ? s.V1(x) * amp : amp);
  };
  std::vector<double> gbps = plan.alphas;
  gbps.insert(gbps.end(), plan.betas.begin(), plan.betas.end());
  for (double x : inside(h.breakpoints(), c, d)) gbps.push_back(x);
  HalfLineFunction out(g, std::nullopt, Interval{c, d}, std::move(gbps),
                       "osc(" + h.label() + ",n=" + std::to_string(plan.n) + "," + to_string(mode) +
                           ")");
  return {std::move(out), std::move(plan)};
}

double oscillator_block_imbalance(const Oscillator& osc, const EquilibriumSolution& sol,
                                  const QuadratureSpec& quad) {
  const auto& plan = osc.plan;
  if (!(plan.mu_total > 0.0)) return 0.0;
  const QuadratureSpec q = tight(quad);
  double worst = 0.0;
  auto ratio = [&](double x) {
    const double gx = osc.g(x);
    return gx == 0.0 ? 0.0 : gx / sol.V1(x);
  };
  for (std::size_t i = 0; i < plan.n; ++i) {
    const double lo = plan.alphas[i];
    const double hi = plan.alphas[i + 1];
    std::vector<double> bps{plan.betas[i]};
    for (double x : inside(osc.g.breakpoints(), lo, hi)) bps.push_back(x);
    const double v = integrate(ratio, lo, hi, q, bps).value;
    worst = std::max(worst, std::abs(v));
  }
  return worst / plan.mu_total;
}

namespace {

struct Cell {
  int k = 0;
  double lo = 0.0;  // η_{k−1}
  double hi = 0.0;  // η_k
  PanelCumulative<2> cum;
};

/// Cumulative over t in [η_{k−1}, η_k] of w·sgn G|G|^{p'−1} times the pieces
/// needed to rebuild (∫_{a(x)}^t w)^{1−δ} V1(t)^δ at any x.
Cell build_cell(const KernelEvaluator& K, const EquilibriumSolution& sol, const EtaGrid& grid,
                int k, int delta, int i, const QuadratureSpec& quad) {
  Cell cell;
  cell.k = k;
  cell.lo = grid[k - 1];
  cell.hi = grid[k];
  const double pc = sol.p_conj();
  const double eta = cell.hi;
  const double anchor = cell.lo;
  auto f = [&K, sol, delta, i, pc, eta, anchor](double t) {
    const double x0 = i == 1 ? t : eta;
    const double x1 = i == 1 ? eta : sol.a_inv(t);
    const double G = K.kernel(delta, t, x0, x1);
    if (G == 0.0) return std::array<double, 2>{0.0, 0.0};
    const double common = sol.w(t) * std::copysign(std::pow(std::abs(G), pc - 1.0), G);
    if (delta == 1) return std::array<double, 2>{common * sol.V1(t), 0.0};
    return std::array<double, 2>{common * sol.w_mass().between(anchor, t), common};
  };
  std::vector<double> bps;
  for (double x : K.breakpoints()) {
    if (x > cell.lo && x < cell.hi) bps.push_back(x);
    try {
      const double y = sol.a(x);
      if (y > cell.lo && y < cell.hi) bps.push_back(y);
    } catch (const Error&) {
    }
  }
  cell.cum = PanelCumulative<2>(f, cell.lo, cell.hi, bps, quad);
  return cell;
}

}  // namespace

HalfLineFunction extremal_F(const HalfLineFunction& g, const EquilibriumSolution& sol,
                            const EtaGrid& grid, int delta, int i, int N,
                            const QuadratureSpec& quad) {
  require(delta == 0 || delta == 1, "extremal_F: delta must be 0 or 1");
  require(i == 1 || i == 2, "extremal_F: i must be 1 or 2");
  require(N >= 0 && grid.has(-N - 1) && grid.has(N + 1),
          "extremal_F: grid must cover k = -N-1 .. N+1");
  const std::string label = "F(d=" + std::to_string(delta) + ",i=" + std::to_string(i) +
                            ",N=" + std::to_string(N) + "," + g.label() + ")";
  const double lo = i == 1 ? grid[-N - 1] : grid[-N];
  const double hi = i == 1 ? grid[N] : grid[N + 1];
  if (g.is_zero()) return fn::zero().with_label(label);

  auto K = std::make_shared<KernelEvaluator>(g, sol, quad);
  auto cells = std::make_shared<std::vector<Cell>>();
  for (int k = -N; k <= N; ++k) cells->push_back(build_cell(*K, sol, grid, k, delta, i, quad));

  const EquilibriumSolution s = sol;
  auto F = [K, cells, s, delta, i](double x) {
    // cell k owns [η_{k−1}, η_k] for i = 1 and [η_k, η_{k+1}] for i = 2
    for (const Cell& c : *cells) {
      const double own_lo = i == 1 ? c.lo : c.hi;
      if (x < own_lo) break;
      const double own_hi = i == 1 ? c.hi : s.a_inv(c.hi);
      if (x > own_hi) continue;
      std::array<double, 2> A;
      if (i == 1) {
        A = c.cum(x);
      } else {
        const auto tot = c.cum.total();
        const auto part = c.cum(s.a(x));
        A = {tot[0] - part[0], tot[1] - part[1]};
      }
      const double v1 = s.V1(x);
      if (delta == 1) return A[0] / v1;
      const double ax = s.a(x);
      const double q = ax >= c.lo ? s.w_mass().between(c.lo, ax) : -s.w_mass().between(ax, c.lo);
      return (A[0] - q * A[1]) / v1;
    }
    return 0.0;
  };
  std::vector<double> bps;
  for (int k = -N - 1; k <= N + 1; ++k) bps.push_back(grid[k]);
  for (double x : g.breakpoints()) {
    bps.push_back(x);
    try {
      bps.push_back(sol.a_inv(x));
      bps.push_back(sol.a(x));
    } catch (const Error&) {
    }
  }
  bps.erase(std::remove_if(bps.begin(), bps.end(), [&](double x) { return x < lo || x > hi; }),
            bps.end());
  return HalfLineFunction(F, std::nullopt, Interval{lo, hi}, std::move(bps), label);
}

double extremal_block_sum(const HalfLineFunction& g, const EquilibriumSolution& sol,
                          const EtaGrid& grid, int delta, int i, int N,
                          const QuadratureSpec& quad) {
  require(N >= 0 && grid.has(-N - 1) && grid.has(N + 1),
          "extremal_block_sum: grid must cover k = -N-1 .. N+1");
  if (g.is_zero()) return 0.0;
  const KernelEvaluator K(g, sol, quad);
  const double pc = sol.p_conj();
  double total = 0.0;
  for (int k = -N; k <= N; ++k) {
    const double lo = grid[k - 1];
    const double hi = grid[k];
    auto f = [&](double t) {
      const double x0 = i == 1 ? t : hi;
      const double x1 = i == 1 ? hi : sol.a_inv(t);
      return sol.w(t) * std::pow(std::abs(K.kernel(delta, t, x0, x1)), pc);
    };
    std::vector<double> bps;
    for (double x : K.breakpoints()) {
      if (x > lo && x < hi) bps.push_back(x);
      try {
        const double y = sol.a(x);
        if (y > lo && y < hi) bps.push_back(y);
      } catch (const Error&) {
      }
    }
    total += integrate(f, lo, hi, quad, bps).value;
  }
  return total;
}

HalfLineFunction smooth_to_g(const HalfLineFunction& phi) {
  if (phi.is_zero()) return fn::zero().with_label("d/dx(0)");
  require(phi.support().has_value() && phi.support()->lo > 0.0,
          "smooth_to_g: phi needs a compact support inside (0, inf)");
  require(phi.has_derivative(), "smooth_to_g: phi needs a derivative");
  return HalfLineFunction([phi](double x) { return phi.derivative(x); }, std::nullopt,
                          phi.support(), phi.breakpoints(), "d/dx(" + phi.label() + ")");
}

double phi_norm(const HalfLineFunction& phi, const WeightPair& pair, const QuadratureSpec& quad) {
  if (phi.is_zero()) return 0.0;
  const Interval s = phi.support_or(quad.truncation);
  const double pc = pair.p_conj();
  auto f = [&](double x) {
    const double v = phi(x);
    return v == 0.0 ? 0.0 : std::pow(std::abs(v) / pair.v1(x), pc);
  };
  return std::pow(integrate(f, s.lo, s.hi, quad, phi.breakpoints()).value, 1.0 / pc);
}

double witness_target(TargetSequence seq, std::size_t k) {
  require(k >= 1, "witness_target: k is 1-based");
  const double kk = static_cast<double>(k);
  if (seq == TargetSequence::geometric) return std::ldexp(1.0, -static_cast<int>(k));
  return 6.0 / (std::numbers::pi * std::numbers::pi * kk * kk);
}

Witness witness_unbounded(const HalfLineFunction& f, const std::vector<Interval>& segments,
                          const EquilibriumSolution& sol, std::size_t k_max,
                          const WitnessOptions& options) {
  require(k_max >= 1 && segments.size() >= k_max, "witness_unbounded: need k_max segments");
  for (std::size_t k = 0; k < k_max; ++k) {
    require(segments[k].lo > 0.0 && segments[k].hi > segments[k].lo,
            "witness_unbounded: segments must be nondegenerate inside (0, inf)");
    if (k > 0) {
      require(segments[k].lo >= segments[k - 1].hi, "witness_unbounded: segments must increase");
    }
  }
  Witness out;
  std::vector<HalfLineFunction> parts;
  double running = 0.0;
  double running_lower = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const Interval seg = segments[k - 1];
    double m = std::numeric_limits<double>::infinity();
    const int S = std::max(options.samples_per_segment, 2);
    for (int j = 0; j <= S; ++j) {
      m = std::min(m, std::abs(f(seg.lo + seg.length() * j / S)));
    }
    for (double x : f.breakpoints()) {
      if (seg.contains(x)) m = std::min(m, std::abs(f(x)));
    }
    if (!(m > 0.0)) {
      throw SegmentRejected(k, "segment " + std::to_string(k) + " [" + num(seg.lo) + ", " +
                                   num(seg.hi) + "] has min |f| = 0");
    }
    WitnessTerm term;
    term.k = k;
    term.segment = seg;
    term.m = m;
    term.theta = 1.0 / (static_cast<double>(k) * m * seg.length());
    term.target = witness_target(options.targets, k);
    term.lower_pairing = term.theta * m * seg.length();

    const HalfLineFunction h = fn::constant_on(seg.lo, seg.hi, term.theta);
    OscillatorOptions oo;
    Oscillator osc = oscillator(h, seg.lo, seg.hi, term.target, sol, oo, options.quad);
    double weak = weak_norm(osc.g, sol, options.quad).value;
    for (int r = 0; weak >= term.target && r < options.max_doublings; ++r) {
      oo.n_override = osc.plan.n * 2;
      osc = oscillator(h, seg.lo, seg.hi, term.target, sol, oo, options.quad);
      weak = weak_norm(osc.g, sol, options.quad).value;
    }
    if (weak >= term.target) {
      fail(ErrorKind::block_budget_exceeded,
           "witness term " + std::to_string(k) + " could not reach its target norm");
    }
    term.weak = weak;
    term.n = osc.plan.n;
    const HalfLineFunction gk = osc.g;
    term.pairing = integrate([&](double x) { return std::abs(f(x) * gk(x)); }, seg.lo, seg.hi,
                             options.quad, gk.breakpoints())
                       .value;
    running += term.pairing;
    running_lower += term.lower_pairing;
    out.partial_pairings.push_back(running);
    out.partial_lower_pairings.push_back(running_lower);
    out.terms.push_back(term);
    parts.push_back(gk);
  }
  out.g = fn::linear_combination(parts, std::vector<double>(parts.size(), 1.0),
                                 "witness(K=" + std::to_string(k_max) + ")");
  out.weak_total = weak_norm(out.g, sol, options.quad).value;
  return out;
}

std::vector<HalfLineFunction> hat_corpus(const CorpusSpec& spec) {
  require(spec.lo > 0.0 && spec.hi > spec.lo + 1.0, "hat_corpus: need a window of length > 1");
  std::mt19937_64 rng(spec.seed);
  std::vector<HalfLineFunction> out;
  const double span = spec.hi - spec.lo;
  for (std::size_t j = 0; out.size() < spec.size; ++j) {
    if (j == 0) {
      out.push_back(fn::hat(1.0, 2.0, 3.0));
      continue;
    }
    const double width = uniform(rng, 0.25 * span, 0.6 * span);
    const double lo = uniform(rng, spec.lo, spec.hi - width);
    const double hi = lo + width;
    const double height = uniform(rng, 0.5, 2.0);
    switch (j % 4) {
      case 1: {
        const double peak = uniform(rng, lo + 0.2 * width, hi - 0.2 * width);
        out.push_back(fn::hat(lo, peak, hi, height));
        break;
      }
      case 2: {
        const double x1 = lo + uniform(rng, 0.1, 0.4) * width;
        const double x2 = hi - uniform(rng, 0.1, 0.4) * width;
        out.push_back(fn::piecewise_linear({lo, x1, x2, hi}, {0.0, height, height, 0.0},
                                           "trap[" + num(lo) + "," + num(hi) + "]"));
        break;
      }
      case 3: out.push_back(fn::quartic_bump(lo, hi, height)); break;
      default: {
        const double mid = 0.5 * (lo + hi);
        const double depth = uniform(rng, 0.2, 1.0) * height;
        out.push_back(fn::piecewise_linear({lo, 0.5 * (lo + mid), mid, 0.5 * (mid + hi), hi},
                                           {0.0, height, 0.0, -depth, 0.0},
                                           "wave[" + num(lo) + "," + num(hi) + "]"));
        break;
      }
    }
  }
  return out;
}

std::vector<HalfLineFunction> g_corpus(const CorpusSpec& spec) {
  require(spec.lo > 0.0 && spec.hi > spec.lo + 1.0, "g_corpus: need a window of length > 1");
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<HalfLineFunction> out;
  const double span = spec.hi - spec.lo;
  for (std::size_t j = 0; out.size() < spec.size; ++j) {
    if (j == 0) {
      out.push_back(fn::indicator(1.0, 2.0));
      continue;
    }
    const double width = uniform(rng, 0.15 * span, 0.5 * span);
    const double lo = uniform(rng, spec.lo, spec.hi - width);
    const double hi = lo + width;
    const double height = uniform(rng, 0.5, 2.0) * (j % 3 == 0 ? -1.0 : 1.0);
    switch (j % 5) {
      case 1: out.push_back(fn::indicator(lo, hi, height)); break;
      case 2: {
        const double peak = uniform(rng, lo + 0.2 * width, hi - 0.2 * width);
        out.push_back(fn::hat(lo, peak, hi, height));
        break;
      }
      case 3: {
        const double mid = uniform(rng, lo + 0.3 * width, hi - 0.3 * width);
        out.push_back(fn::linear_combination({fn::indicator(lo, mid), fn::indicator(mid, hi)},
                                             {height, -0.5 * height},
                                             "step[" + num(lo) + "," + num(mid) + "," + num(hi) + "]"));
        break;
      }
      case 4: out.push_back(fn::quartic_bump(lo, hi, height)); break;
      default: {
        const double x1 = lo + width / 3.0;
        const double x2 = lo + 2.0 * width / 3.0;
        out.push_back(fn::piecewise_linear({lo, x1, x2, hi}, {height, -height, height, 0.5 * height},
                                           "zigzag[" + num(lo) + "," + num(hi) + "]"));
        break;
      }
    }
  }
  return out;
}

}  // namespace assocnorm
