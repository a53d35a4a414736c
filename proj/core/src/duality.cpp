#include "assocnorm/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace assocnorm {

namespace {

std::string num(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

std::vector<double> merged_bps(const HalfLineFunction& f, const HalfLineFunction& g) {
  std::vector<double> out = f.breakpoints();
  out.insert(out.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Pieces of the support cut at the breakpoints of f.
std::vector<Interval> pieces(const HalfLineFunction& f, const Interval& s) {
  std::vector<double> edges{s.lo};
  for (double x : f.breakpoints()) {
    if (x > s.lo && x < s.hi) edges.push_back(x);
  }
  edges.push_back(s.hi);
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) out.push_back({edges[i], edges[i + 1]});
  }
  return out;
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

struct SupResult {
  double value = 0.0;
  double at = 0.0;
};

template <class F>
SupResult sup_on(const F& f, double lo, double hi) {
  constexpr int M = 512;
  const double r = std::log(hi / lo);
  auto node = [&](int j) { return lo * std::exp(r * (j + 0.5) / M); };
  SupResult best{-std::numeric_limits<double>::infinity(), lo};
  int jbest = 0;
  for (int j = 0; j < M; ++j) {
    const double t = node(j);
    const double v = f(t);
    if (v > best.value) {
      best = {v, t};
      jbest = j;
    }
  }
  const double a = jbest == 0 ? lo : node(jbest - 1);
  const double b = jbest == M - 1 ? hi : node(jbest + 1);
  boost::uintmax_t iters = 200;
  const auto r2 = boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, a, b, 30,
                                                        iters);
  if (-r2.second > best.value) best = {-r2.second, r2.first};
  return best;
}

}  // namespace

QuadResult pairing(const HalfLineFunction& f, const HalfLineFunction& g,
                   const QuadratureSpec& quad) {
  if (f.is_zero() || g.is_zero()) return {};
  const Interval sf = f.support_or(quad.truncation);
  const Interval sg = g.support_or(quad.truncation);
  const double lo = std::max(sf.lo, sg.lo);
  const double hi = std::min(sf.hi, sg.hi);
  if (!(hi > lo)) return {};
  const auto bps = merged_bps(f, g);
  QuadResult r = integrate([&](double x) { return f(x) * g(x); }, lo, hi, quad, bps);
  if (!std::isfinite(r.value)) {
    throw DivergentIntegral(Side::upper, "pairing of '" + f.label() + "' and '" + g.label() +
                                             "' is not finite");
  }
  return r;
}

std::vector<FamilyMember> measure_family(const std::vector<HalfLineFunction>& family,
                                         const EquilibriumSolution& sol,
                                         const QuadratureSpec& quad) {
  std::vector<FamilyMember> out;
  out.reserve(family.size());
  for (const auto& g : family) out.push_back({g, weak_norm(g, sol, quad).value});
  return out;
}

double SandwichReport::lower_constant() const {
  return sobolev_value > 0.0 ? J_lower / sobolev_value : 0.0;
}

SandwichReport estimate_J(const HalfLineFunction& f, const std::vector<FamilyMember>& family,
                          const EquilibriumSolution& sol, const QuadratureSpec& quad,
                          double C_impl) {
  require(!family.empty(), "estimate_J: empty family");
  SandwichReport r;
  r.f_label = f.label();
  r.family_size = family.size();
  r.sobolev_value = f.is_zero() ? 0.0 : sobolev_norm(f, sol.pair(), quad).value;
  r.holder_upper = C_impl * r.sobolev_value;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& m = family[i];
    double ratio = 0.0;
    if (m.weak > 0.0 && !f.is_zero()) ratio = std::abs(pairing(f, m.g, quad).value) / m.weak;
    r.ratios.push_back(ratio);
    r.labels.push_back(m.g.label());
    if (ratio > r.J_lower) {
      r.J_lower = ratio;
      r.best = i;
    }
  }
  return r;
}

SandwichReport estimate_J(const HalfLineFunction& f, const std::vector<HalfLineFunction>& family,
                          const EquilibriumSolution& sol, const QuadratureSpec& quad,
                          double C_impl) {
  require(!family.empty(), "estimate_J: empty family");
  return estimate_J(f, measure_family(family, sol, quad), sol, quad, C_impl);
}

double verify_embedding(const HalfLineFunction& g, const EquilibriumSolution& sol,
                        const QuadratureSpec& quad) {
  if (g.is_zero()) return 0.0;
  const double weak = weak_norm(g, sol, quad).value;
  const double den = dual_lp_norm(g, sol.pair().v0, sol.p_conj(), quad);
  if (den == 0.0) {
    if (weak == 0.0) return 0.0;
    fail(ErrorKind::domain, "embedding: weak norm " + num(weak) + " of '" + g.label() +
                                "' is positive while its dual norm vanishes");
  }
  return weak / den;
}

bool DivergenceTable::unbounded() const {
  if (rows.empty()) return false;
  std::vector<DivergenceRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.epsilon > r.epsilon; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].ratio >= sorted[i].lower_bound)) return false;
    if (i > 0 && !(sorted[i].ratio > sorted[i - 1].ratio)) return false;
  }
  return true;
}

DivergenceTable verify_strong_of_weak_zero(const HalfLineFunction& f,
                                           const std::vector<double>& eps_list,
                                           const EquilibriumSolution& sol,
                                           const QuadratureSpec& quad,
                                           std::optional<Interval> segment, double C_impl) {
  require(!eps_list.empty(), "verify_strong_of_weak_zero: empty epsilon list");
  auto mass = [&](const Interval& s) {
    if (f.is_zero()) return 0.0;
    return integrate([&](double x) { return std::abs(f(x)); }, s.lo, s.hi, quad, f.breakpoints())
        .value;
  };
  DivergenceTable out;
  std::vector<Interval> candidates;
  if (segment) {
    candidates.push_back(*segment);
  } else if (f.support()) {
    candidates.push_back(*f.support());
  } else {
    for (int j : {0, -1, 1, -2, 2, -3, 3}) {
      const Interval s{std::pow(10.0, j), std::pow(10.0, j + 1)};
      if (s.lo >= quad.truncation.lo && s.hi <= quad.truncation.hi) candidates.push_back(s);
    }
  }
  for (const auto& s : candidates) {
    require(s.lo > 0.0 && s.hi > s.lo && std::isfinite(s.hi),
            "verify_strong_of_weak_zero: segment must lie inside (0, inf)");
    const double m = mass(s);
    if (m > 0.0) {
      out.segment = s;
      out.f_mass = m;
      break;
    }
  }
  if (!(out.f_mass > 0.0)) {
    fail(ErrorKind::no_witness_segment, "f vanishes on every probed segment");
  }
  const Interval s = out.segment;
  const HalfLineFunction h = fn::constant_on(s.lo, s.hi, 1.0);
  std::vector<double> lx, ly;
  for (double eps : eps_list) {
    require(eps > 0.0, "verify_strong_of_weak_zero: epsilon must be positive");
    const Oscillator osc = oscillator(h, s.lo, s.hi, eps, sol, {}, quad);
    DivergenceRow row;
    row.epsilon = eps;
    row.n = osc.plan.n;
    row.pairing = integrate([&](double x) { return std::abs(f(x) * osc.g(x)); }, s.lo, s.hi, quad,
                            merged_bps(f, osc.g))
                      .value;
    row.weak = weak_norm(osc.g, sol, quad).value;
    row.ratio = row.weak > 0.0 ? row.pairing / row.weak : 0.0;
    row.lower_bound = out.f_mass / (eps * C_impl);
    out.rows.push_back(row);
    if (row.ratio > 0.0) {
      lx.push_back(std::log(eps));
      ly.push_back(std::log(row.ratio));
    }
  }
  out.slope = lx.size() >= 2 ? slope_fit(lx, ly) : 0.0;
  return out;
}

HardyConstants hardy_constants(const EquilibriumSolution& sol, const EtaGrid& grid, int k,
                               const QuadratureSpec& quad) {
  require(grid.has(k - 1) && grid.has(k), "hardy_constants: cell k is outside the grid");
  const double lo = grid[k - 1];
  const double hi = grid[k];
  const double p = sol.p();
  const double pc = sol.p_conj();
  const Mass& W = sol.w_mass();
  const Mass& U = sol.u_mass();
  const double top = sol.a_inv(lo);

  auto density = [&sol, p](double x) {
    return std::array<double, 1>{sol.w(x) * std::pow(sol.V1_minus(x), -p)};
  };
  const PanelCumulative<1> Q1(density, lo, hi, {}, quad);
  const PanelCumulative<1> Q2(density, hi, top, {}, quad);

  HardyConstants out;
  out.k = k;
  const auto a1 = sup_on(
      [&](double t) { return std::pow(U.between(t, hi), 1.0 / p) * std::pow(W.between(lo, t), 1.0 / pc); },
      lo, hi);
  const auto a2 = sup_on(
      [&](double t) {
        return std::pow(U.between(hi, sol.a_inv(t)), 1.0 / p) * std::pow(W.between(t, hi), 1.0 / pc);
      },
      lo, hi);
  const auto aa1 = sup_on(
      [&](double t) { return (Q1.total()[0] - Q1(t)[0]) * std::pow(W.between(lo, t), p - 1.0); },
      lo, hi);
  const auto aa2 = sup_on(
      [&](double t) {
        const double x = std::min(sol.a_inv(t), top);
        return Q2(x)[0] * std::pow(W.between(t, hi), p - 1.0);
      },
      lo, hi);
  out.A1 = a1.value;
  out.t_A1 = a1.at;
  out.A2 = a2.value;
  out.t_A2 = a2.at;
  out.AA1_p = aa1.value;
  out.t_AA1 = aa1.at;
  out.AA2_p = aa2.value;
  out.t_AA2 = aa2.at;
  return out;
}

WindowConstant window_constant(const EquilibriumSolution& sol, double t) {
  const double p = sol.p();
  const double pc = sol.p_conj();
  const Mass& U = sol.u_mass();
  const double v1 = std::pow(sol.V1(t), 1.0 / pc);
  WindowConstant out;
  out.t = t;
  out.A_a = v1 * std::pow(U.between(t, sol.a_inv(t)), 1.0 / p);
  out.A_b = v1 * std::pow(U.between(sol.b_inv(t), t), 1.0 / p);
  return out;
}

std::vector<HalfLineFunction> reflexivity_family(const HalfLineFunction& f,
                                                 const EquilibriumSolution& sol) {
  if (f.is_zero()) return {};
  require(f.support().has_value(), "reflexivity_family: f needs a compact support");
  const Interval s = *f.support();
  const WeightPair& pair = sol.pair();
  const double p = pair.p();
  const Weight v0 = pair.v0;
  const Weight v1 = pair.v1;
  std::vector<HalfLineFunction> out;

  HalfLineFunction g0(
      [f, v0, p](double x) {
        const double y = f(x);
        return y == 0.0 ? 0.0 : std::pow(v0(x), p) * std::pow(std::abs(y), p - 1.0) * sign(y);
      },
      std::nullopt, s, f.breakpoints(), "v0^p|f|^(p-1)sgn(f)");
  out.push_back(g0);

  // plateaus with height -sgn(f')|f'|^{p-1} v1^p on a refinement of the pieces
  auto slope = [&f](double x, double width) {
    if (f.has_derivative()) return f.derivative(x);
    const double h = 1e-6 * width;
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  std::vector<HalfLineFunction> plateaus;
  for (const Interval& piece : pieces(f, s)) {
    constexpr int sub = 4;
    for (int j = 0; j < sub; ++j) {
      const double l = piece.lo + piece.length() * j / sub;
      const double r = piece.lo + piece.length() * (j + 1) / sub;
      const double mid = 0.5 * (l + r);
      const double d = slope(mid, r - l);
      const double c = -sign(d) * std::pow(std::abs(d), p - 1.0) * std::pow(v1(mid), p);
      if (c != 0.0 && std::isfinite(c)) plateaus.push_back(fn::plateau(l, r, 0.1 * (r - l), c));
    }
  }
  const QuadratureSpec quad{};
  std::optional<HalfLineFunction> gphi;
  double phi_scale = 0.0;
  if (!plateaus.empty()) {
    const HalfLineFunction phi = fn::linear_combination(
        plateaus, std::vector<double>(plateaus.size(), 1.0), "phi(f')");
    gphi = smooth_to_g(phi);
    phi_scale = phi_norm(phi, pair, quad);
    out.push_back(*gphi);
  }

  const double g0_scale = dual_lp_norm(g0, v0, pair.p_conj(), quad);
  if (gphi && phi_scale > 0.0 && g0_scale > 0.0) {
    for (double lambda : {0.25, 0.5, 0.75}) {
      out.push_back(fn::linear_combination({g0, *gphi},
                                           {lambda / g0_scale, (1.0 - lambda) / phi_scale},
                                           "mix(" + num(lambda) + ")"));
    }
  }

  out.push_back(HalfLineFunction([f](double x) { return sign(f(x)); }, std::nullopt, s,
                                 f.breakpoints(), "sgn(f)"));
  for (const Interval& piece : pieces(f, s)) {
    const double sg = sign(f(0.5 * (piece.lo + piece.hi)));
    if (sg != 0.0) out.push_back(fn::indicator(piece.lo, piece.hi, sg));
  }
  return out;
}

std::vector<FamilyMember> shared_family(const EquilibriumSolution& sol, const EtaGrid& grid,
                                        const ReflexivityOptions& options,
                                        const QuadratureSpec& quad) {
  std::vector<HalfLineFunction> members;
  const auto gs = g_corpus(options.g_spec);
  const std::size_t m = std::min(options.extremal_from, gs.size());
  const int N = std::min({options.extremal_N, grid.highest - 1, -grid.lowest - 1});
  if (N >= 0) {
    for (std::size_t j = 0; j < m; ++j) {
      for (int delta : {0, 1}) {
        const HalfLineFunction F =
            fn::sum(extremal_F(gs[j], sol, grid, delta, 1, N, quad),
                    extremal_F(gs[j], sol, grid, delta, 2, N, quad));
        if (F.is_zero()) continue;
        members.push_back(fn::tabulate(F, options.tab_points)
                              .with_label("F" + std::to_string(delta) + "(" + gs[j].label() + ")"));
      }
    }
  }
  members.push_back(oscillator(fn::constant_on(1.0, 2.0, 1.0), 1.0, 2.0, 0.1, sol, {}, quad).g);
  return measure_family(members, sol, quad);
}

ReflexivityResult verify_reflexivity(const std::vector<HalfLineFunction>& corpus,
                                     const EquilibriumSolution& sol,
                                     const std::vector<FamilyMember>& shared,
                                     const QuadratureSpec& quad,
                                     const ReflexivityOptions& options) {
  ReflexivityResult out;
  bool first = true;
  for (const auto& f : corpus) {
    std::vector<FamilyMember> family = measure_family(reflexivity_family(f, sol), sol, quad);
    family.insert(family.end(), shared.begin(), shared.end());
    if (family.empty()) {
      SandwichReport zero;
      zero.f_label = f.label();
      out.reports.push_back(zero);
      continue;
    }
    SandwichReport r = estimate_J(f, family, sol, quad, options.C_impl);
    if (r.sobolev_value > 0.0) {
      const double c = r.lower_constant();
      out.c_emp = first ? c : std::min(out.c_emp, c);
      out.C_emp = first ? c : std::max(out.C_emp, c);
      first = false;
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

std::vector<double> truncation_tail(const HalfLineFunction& g, const EquilibriumSolution& sol,
                                    const EtaGrid& grid, const std::vector<int>& Ns,
                                    const QuadratureSpec& quad) {
  std::vector<double> out;
  for (int N : Ns) {
    const HalfLineFunction rest = fn::difference(g, truncate(g, grid, N));
    out.push_back(weak_norm(rest, sol, quad).value);
  }
  return out;
}

double holder_ratio(const std::vector<HalfLineFunction>& fs, const std::vector<HalfLineFunction>& gs,
                    const EquilibriumSolution& sol, const QuadratureSpec& quad) {
  std::vector<double> sob, weak;
  for (const auto& f : fs) sob.push_back(f.is_zero() ? 0.0 : sobolev_norm(f, sol.pair(), quad).value);
  for (const auto& g : gs) weak.push_back(weak_norm(g, sol, quad).value);
  double worst = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (!(sob[i] > 0.0 && weak[j] > 0.0)) continue;
      worst = std::max(worst, std::abs(pairing(fs[i], gs[j], quad).value) / (sob[i] * weak[j]));
    }
  }
  return worst;
}

namespace {

CheckRow row(const std::string& suite, const std::string& check, double metric, double threshold,
             bool passed, const std::string& detail = "") {
  return {suite, check, metric, threshold, passed, detail};
}

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, (i + 0.5) / n));
  return out;
}

std::vector<CheckRow> suite_identity(const SuiteContext& ctx) {
  const std::string S = "identity";
  const EtaGrid grid = build_eta_grid(ctx.sol, ctx.N);
  const double lo = grid[grid.lowest];
  const double hi = grid[grid.highest];
  double worst_id = 0.0, worst_res = 0.0, at = lo;
  for (double t : log_points(lo, hi, 100)) {
    const double id = check_identity(ctx.sol, t, 1e-5);
    if (id > worst_id) {
      worst_id = id;
      at = t;
    }
    const Residuals r = ctx.sol.residuals(t);
    worst_res = std::max({worst_res, r.eq2, r.eq3});
  }
  return {row(S, "differential_identity", worst_id, 1e-6, worst_id < 1e-6,
              "worst at t=" + num(at) + " over 100 points in [" + num(lo) + ", " + num(hi) + "]"),
          row(S, "window_residuals", worst_res, 1e-6, worst_res < 1e-6)};
}

std::vector<CheckRow> suite_hardy(const SuiteContext& ctx) {
  const std::string S = "hardy";
  const EtaGrid grid = build_eta_grid(ctx.sol, ctx.N);
  const double p = ctx.sol.p();
  double a = 0.0, aa = 0.0;
  std::string where_a, where_aa;
  for (int k = grid.lowest + 1; k <= grid.highest; ++k) {
    const HardyConstants h = hardy_constants(ctx.sol, grid, k, ctx.quad);
    if (std::max(h.A1, h.A2) > a) {
      a = std::max(h.A1, h.A2);
      where_a = "k=" + std::to_string(k);
    }
    if (std::max(h.AA1_p, h.AA2_p) > aa) {
      aa = std::max(h.AA1_p, h.AA2_p);
      where_aa = "k=" + std::to_string(k);
    }
  }
  double win = 0.0;
  for (double t : log_points(grid[grid.lowest], grid[grid.highest], 100)) {
    const WindowConstant w = window_constant(ctx.sol, t);
    win = std::max({win, w.A_a, w.A_b});
  }
  const double bound = 1.0 / (p - 1.0) + 1e-6;
  return {row(S, "A1_A2", a, 1.0 + 1e-6, a <= 1.0 + 1e-6, where_a),
          row(S, "AA1p_AA2p", aa, bound, aa <= bound, where_aa),
          row(S, "window_constant", win, 1.0 + 1e-6, win <= 1.0 + 1e-6, "100 sampled t")};
}

std::vector<CheckRow> suite_blocks(const SuiteContext& ctx) {
  const std::string S = "blocks";
  const EtaGrid grid = build_eta_grid(ctx.sol, ctx.N);
  const auto gs = g_corpus(ctx.corpus);
  const QuadratureSpec fine = ctx.quad.tightened(10.0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, drift = 0.0;
  std::size_t warned = 0;
  for (const auto& g : gs) {
    const NormReport b = block_norm(g, ctx.sol, grid, ctx.quad);
    warned += b.warnings.empty() ? 0 : 1;
    const double r = b.value / weak_norm(g, ctx.sol, ctx.quad).value;
    const double rf = block_norm(g, ctx.sol, grid, fine).value / weak_norm(g, ctx.sol, fine).value;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    drift = std::max(drift, std::abs(rf / r - 1.0));
  }
  const std::string detail = std::to_string(gs.size()) + " members, " + std::to_string(warned) +
                             " with coverage warnings";
  return {row(S, "ratio_min", lo, 0.01, lo >= 0.01, detail),
          row(S, "ratio_max", hi, 100.0, hi <= 100.0, detail),
          row(S, "refinement_drift", drift, 0.01, drift < 0.01, "tolerances 10x tighter")};
}

std::vector<CheckRow> suite_hoelder(const SuiteContext& ctx) {
  const std::string S = "hoelder";
  const auto fs = hat_corpus(ctx.corpus);
  const auto gs = g_corpus(ctx.corpus);
  const double r = holder_ratio(fs, gs, ctx.sol, ctx.quad);
  const double rf = holder_ratio(fs, gs, ctx.sol, ctx.quad.tightened(10.0));
  const double drift = r > 0.0 ? std::abs(rf / r - 1.0) : 0.0;
  const std::string size = std::to_string(fs.size()) + "x" + std::to_string(gs.size());
  return {row(S, "max_ratio", r, kHolderConstant, std::isfinite(r) && r <= kHolderConstant, size),
          row(S, "refinement_drift", drift, 0.01, drift < 0.01, "tolerances 10x tighter")};
}

/// observed maxima stay below 0.6
constexpr double kEmbeddingCeiling = 10.0;

std::vector<CheckRow> suite_embedding(const SuiteContext& ctx) {
  const std::string S = "embedding";
  const auto gs = g_corpus(ctx.corpus);
  double worst = 0.0;
  std::string at;
  for (const auto& g : gs) {
    const double r = verify_embedding(g, ctx.sol, ctx.quad);
    if (r > worst) {
      worst = r;
      at = g.label();
    }
  }
  const double zero = verify_embedding(fn::zero(), ctx.sol, ctx.quad);
  return {row(S, "max_ratio", worst, kEmbeddingCeiling,
              std::isfinite(worst) && worst <= kEmbeddingCeiling, at),
          row(S, "zero_convention", zero, 0.0, zero == 0.0)};
}

std::vector<CheckRow> suite_reflexivity(const SuiteContext& ctx) {
  const std::string S = "reflexivity";
  const EtaGrid grid = build_eta_grid(ctx.sol, ctx.N);
  ReflexivityOptions opt;
  opt.g_spec = ctx.corpus;
  const auto shared = shared_family(ctx.sol, grid, opt, ctx.quad);
  const auto fs = hat_corpus(ctx.corpus);
  std::vector<HalfLineFunction> doubled;
  for (const auto& f : fs) doubled.push_back(fn::scale(f, 2.0));
  const ReflexivityResult r = verify_reflexivity(fs, ctx.sol, shared, ctx.quad, opt);
  const ReflexivityResult r2 = verify_reflexivity(doubled, ctx.sol, shared, ctx.quad, opt);
  bool positive = true, below = true;
  for (const auto& rep : r.reports) {
    positive = positive && rep.J_lower > 0.0;
    below = below && rep.J_lower <= rep.holder_upper;
  }
  const double ratio = r.sandwich_ratio();
  const double change = ratio > 0.0 ? std::abs(r2.sandwich_ratio() / ratio - 1.0) : 1.0;
  const std::string detail = "c_emp=" + num(r.c_emp) + " C_emp=" + num(r.C_emp);
  return {row(S, "J_lower_positive", positive ? 1.0 : 0.0, 1.0, positive),
          row(S, "J_lower_below_holder", below ? 1.0 : 0.0, 1.0, below),
          row(S, "sandwich_ratio", ratio, kSandwichCeiling, ratio > 0.0 && ratio <= kSandwichCeiling,
              detail),
          row(S, "scaling_invariance", change, 0.01, change < 0.01, "f -> 2f")};
}

std::vector<CheckRow> suite_divergence(const SuiteContext& ctx) {
  const std::string S = "corol-divergence";
  const auto table = verify_strong_of_weak_zero(fn::constant_on(1.0, 2.0, 1.0), {1e-1, 1e-2, 1e-3},
                                                ctx.sol, ctx.quad);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double g = table.rows[i].ratio / table.rows[i - 1].ratio;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return {row(S, "growth_min", lo, 8.0, lo >= 8.0, "per decade of epsilon"),
          row(S, "growth_max", hi, 12.0, hi <= 12.0, "per decade of epsilon"),
          row(S, "above_lower_bound", table.unbounded() ? 1.0 : 0.0, 1.0, table.unbounded()),
          row(S, "loglog_slope", table.slope, -1.0, std::abs(table.slope + 1.0) <= 0.1)};
}

}  // namespace

std::vector<CheckRow> run_suite(const std::string& name, const SuiteContext& ctx) {
  if (name == "identity") return suite_identity(ctx);
  if (name == "hardy") return suite_hardy(ctx);
  if (name == "blocks") return suite_blocks(ctx);
  if (name == "hoelder") return suite_hoelder(ctx);
  if (name == "embedding") return suite_embedding(ctx);
  if (name == "reflexivity") return suite_reflexivity(ctx);
  if (name == "corol-divergence") return suite_divergence(ctx);
  fail(ErrorKind::invalid_argument, "unknown suite '" + name + "'");
}

}  // namespace assocnorm
