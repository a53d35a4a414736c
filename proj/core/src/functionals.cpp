#include "assocnorm/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace assocnorm {

namespace {

template <std::size_t N, class F>
detail::AdaptiveOutcome<N> integrate_vec(const F& f, double a, double b, const QuadratureSpec& q,
                                         const std::vector<double>& bps) {
  if (!(b > a)) return {};
  return detail::adaptive<N>(f, a, b, std::span<const double>(bps), q, false);
}

double root_error(double x, double err, double r) {
  if (!(x > 0.0)) return err > 0.0 ? std::pow(err, 1.0 / r) : 0.0;
  return std::pow(x, 1.0 / r - 1.0) * err / r;
}

double signed_mass(const Mass& m, double from, double to) {
  return to >= from ? m.between(from, to) : -m.between(to, from);
}

std::vector<double> window_breakpoints(const EquilibriumSolution& sol, const std::vector<double>& bps,
                                       double lo, double hi) {
  std::vector<double> out;
  for (double x : bps) {
    if (x >= lo && x <= hi) out.push_back(x);
    try {
      const double y = sol.a(x);
      if (y >= lo && y <= hi) out.push_back(y);
    } catch (const Error&) {
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double NormReport::component(const std::string& name) const {
  auto it = components.find(name);
  require(it != components.end(), "NormReport has no component '" + name + "'");
  return it->second;
}

KernelEvaluator::KernelEvaluator(const HalfLineFunction& g, const EquilibriumSolution& sol,
                                 const QuadratureSpec& quad, bool with_v1)
    : sol_(sol), support_(g.support_or(quad.truncation)), with_v1_(with_v1) {
  quad.validate();
  require(support_.lo > 0.0 || !with_v1, "kernel evaluation needs a support inside (0, inf)");
  const double lo = std::max(support_.lo, 1e-300);
  outer_ = {sol_.a(lo), support_.hi};
  anchor_ = outer_.lo;
  bps_.push_back(support_.lo);
  for (double x : g.breakpoints()) {
    if (x > support_.lo && x < support_.hi) bps_.push_back(x);
  }
  bps_.push_back(support_.hi);
  if (g.is_zero()) return;

  const EquilibriumSolution s = sol_;
  const double anchor = anchor_;
  typename PanelCumulative<3>::Integrand f;
  if (with_v1_) {
    f = [g, s, anchor](double x) {
      const double gx = g(x);
      if (gx == 0.0) return std::array<double, 3>{0.0, 0.0, 0.0};
      const Window w = s.window(x);
      const double v1 = s.w_mass().between(w.a, w.b);
      const double q = s.w_mass().between(anchor, w.a);
      return std::array<double, 3>{gx / v1, gx * q / v1, std::abs(gx)};
    };
  } else {
    f = [g](double x) { return std::array<double, 3>{0.0, 0.0, std::abs(g(x))}; };
  }
  cumulative_ = PanelCumulative<3>(f, support_.lo, support_.hi, bps_, quad);
}

double KernelEvaluator::kernel(int delta, double t, double x_lo, double x_hi) const {
  if (!(x_hi > x_lo) || cumulative_.panel_count() == 0) return 0.0;
  const auto hi = cumulative_(x_hi);
  const auto lo = cumulative_(x_lo);
  const double dp = hi[0] - lo[0];
  if (delta == 1) return dp == 0.0 ? 0.0 : sol_.V1(t) * dp;
  const double dr = hi[1] - lo[1];
  if (dp == 0.0 && dr == 0.0) return 0.0;
  return signed_mass(sol_.w_mass(), anchor_, t) * dp - dr;
}

double KernelEvaluator::abs_mass(double x_lo, double x_hi) const {
  if (!(x_hi > x_lo) || cumulative_.panel_count() == 0) return 0.0;
  return cumulative_(x_hi)[2] - cumulative_(x_lo)[2];
}

NormReport sobolev_norm(const HalfLineFunction& f, const WeightPair& pair,
                        const QuadratureSpec& quad, bool allow_numeric_derivative) {
  quad.validate();
  NormReport r;
  const Interval s = f.support_or(quad.truncation);
  r.truncation_used = s;
  if (f.is_zero()) {
    r.components = {{"v0_f", 0.0}, {"v1_df", 0.0}};
    return r;
  }
  std::function<double(double)> df;
  if (f.has_derivative()) {
    df = [f](double x) { return f.derivative(x); };
  } else {
    if (!allow_numeric_derivative) {
      fail(ErrorKind::derivative_required,
           "sobolev_norm: '" + f.label() + "' has no derivative and numeric differentiation is off");
    }
    r.warnings.push_back("numeric derivative used for '" + f.label() + "'");
    df = [f](double x) {
      const double h = 1e-6 * std::max(1.0, x);
      return (f(x + h) - f(x - h)) / (2.0 * h);
    };
  }
  const double p = pair.p();
  auto integrand = [&](double x) {
    return std::array<double, 2>{std::pow(pair.v0(x) * std::abs(f(x)), p),
                                 std::pow(pair.v1(x) * std::abs(df(x)), p)};
  };
  const auto out = integrate_vec<2>(integrand, s.lo, s.hi, quad, f.breakpoints());
  const double a = std::pow(out.value[0], 1.0 / p);
  const double b = std::pow(out.value[1], 1.0 / p);
  r.value = a + b;
  r.est_error = root_error(out.value[0], out.error[0], p) + root_error(out.value[1], out.error[1], p);
  r.components = {{"v0_f", a}, {"v1_df", b}};
  if (!out.converged) r.warnings.push_back("quadrature did not reach tolerance");
  return r;
}

NormReport strong_norm(const HalfLineFunction& g, const EquilibriumSolution& sol,
                       const QuadratureSpec& quad) {
  NormReport r;
  if (g.is_zero()) {
    r.truncation_used = g.support_or(quad.truncation);
    return r;
  }
  const KernelEvaluator K(g, sol, quad, false);
  const Interval outer = K.outer_range();
  r.truncation_used = outer;
  const double pc = sol.p_conj();
  auto integrand = [&](double t) {
    const double m = K.abs_mass(t, sol.a_inv(t));
    return std::array<double, 1>{sol.w(t) * std::pow(m, pc)};
  };
  const auto bps = window_breakpoints(sol, K.breakpoints(), outer.lo, outer.hi);
  const auto out = integrate_vec<1>(integrand, outer.lo, outer.hi, quad, bps);
  r.value = std::pow(out.value[0], 1.0 / pc);
  r.est_error = root_error(out.value[0], out.error[0], pc);
  r.components = {{"G_strong", r.value}};
  if (!out.converged || !K.converged()) r.warnings.push_back("quadrature did not reach tolerance");
  return r;
}

NormReport weak_norm(const HalfLineFunction& g, const EquilibriumSolution& sol,
                     const QuadratureSpec& quad) {
  NormReport r;
  if (g.is_zero()) {
    r.truncation_used = g.support_or(quad.truncation);
    r.components = {{"G_frak", 0.0}, {"G_cal", 0.0}};
    return r;
  }
  const KernelEvaluator K(g, sol, quad);
  const Interval outer = K.outer_range();
  r.truncation_used = outer;
  const double pc = sol.p_conj();
  auto integrand = [&](double t) {
    const double s = sol.a_inv(t);
    const double wt = sol.w(t);
    return std::array<double, 2>{wt * std::pow(std::abs(K.kernel(0, t, t, s)), pc),
                                 wt * std::pow(std::abs(K.kernel(1, t, t, s)), pc)};
  };
  const auto bps = window_breakpoints(sol, K.breakpoints(), outer.lo, outer.hi);
  const auto out = integrate_vec<2>(integrand, outer.lo, outer.hi, quad, bps);
  const double gf = std::pow(out.value[0], 1.0 / pc);
  const double gc = std::pow(out.value[1], 1.0 / pc);
  r.value = gf + gc;
  r.est_error = root_error(out.value[0], out.error[0], pc) + root_error(out.value[1], out.error[1], pc);
  r.components = {{"G_frak", gf}, {"G_cal", gc}};
  if (!out.converged || !K.converged()) r.warnings.push_back("quadrature did not reach tolerance");
  return r;
}

NormReport block_norm(const HalfLineFunction& g, const EquilibriumSolution& sol,
                      const EtaGrid& grid, const QuadratureSpec& quad) {
  NormReport r;
  require(grid.highest > grid.lowest, "block_norm: grid needs at least one cell");
  if (g.is_zero()) {
    r.truncation_used = g.support_or(quad.truncation);
    return r;
  }
  const KernelEvaluator K(g, sol, quad);
  const Interval outer = K.outer_range();
  r.truncation_used = outer;
  if (grid[grid.lowest] > outer.lo || grid[grid.highest] < outer.hi) {
    std::ostringstream msg;
    msg << "under-coverage: grid spans [" << grid[grid.lowest] << ", " << grid[grid.highest]
        << "] but the kernels live on [" << outer.lo << ", " << outer.hi << "]; truncated";
    r.warnings.push_back(msg.str());
  }
  const double pc = sol.p_conj();
  double total = 0.0;
  double err = 0.0;
  for (int k = grid.lowest + 1; k <= grid.highest; ++k) {
    const double lo = std::max(grid[k - 1], outer.lo);
    const double hi = std::min(grid[k], outer.hi);
    if (!(hi > lo)) continue;
    const double eta = grid[k];
    auto integrand = [&](double t) {
      const double s = sol.a_inv(t);
      const double wt = sol.w(t);
      auto term = [&](int delta, double x0, double x1) {
        return wt * std::pow(std::abs(K.kernel(delta, t, x0, x1)), pc);
      };
      return std::array<double, 4>{term(0, t, eta), term(0, eta, s), term(1, t, eta),
                                   term(1, eta, s)};
    };
    auto bps = window_breakpoints(sol, K.breakpoints(), lo, hi);
    const auto out = integrate_vec<4>(integrand, lo, hi, quad, bps);
    const int is[4] = {1, 2, 1, 2};
    const int ds[4] = {0, 0, 1, 1};
    for (int j = 0; j < 4; ++j) {
      r.blocks.push_back({k, is[j], ds[j], out.value[static_cast<std::size_t>(j)]});
      total += out.value[static_cast<std::size_t>(j)];
      err += out.error[static_cast<std::size_t>(j)];
    }
    if (!out.converged) r.warnings.push_back("quadrature did not reach tolerance in cell " + std::to_string(k));
  }
  r.value = std::pow(total, 1.0 / pc);
  r.est_error = root_error(total, err, pc);
  r.components = {{"sum_pow", total}};
  return r;
}

NormReport remark_unit_norm(const HalfLineFunction& v, const WeightPair& pair,
                            const QuadratureSpec& quad) {
  require(pair.is_unit(), "remark_unit_norm applies to v0 = v1 = 1 only");
  return remark_unit_norm(v, pair.p(), quad);
}

NormReport remark_unit_norm(const HalfLineFunction& v, double p, const QuadratureSpec& quad) {
  quad.validate();
  const double pc = ExponentPair::from_p(p).p_conj;
  NormReport r;
  const Interval s = v.support_or(quad.truncation);
  const double t0 = std::max(0.0, s.lo - 0.5);
  r.truncation_used = {t0, s.hi};
  if (v.is_zero()) {
    r.components = {{"term1", 0.0}, {"term2", 0.0}};
    return r;
  }
  std::vector<double> bps{s.lo, s.hi};
  for (double x : v.breakpoints()) {
    if (x > s.lo && x < s.hi) bps.push_back(x);
  }
  const PanelCumulative<1> C([v](double x) { return std::array<double, 1>{v(x)}; }, s.lo, s.hi,
                             bps, quad);
  auto c = [&C](double x) { return C(x)[0]; };
  std::vector<double> hbps = bps;
  hbps.push_back(s.hi + 1.0);
  const PanelCumulative<1> H([c](double x) { return std::array<double, 1>{c(x)}; }, s.lo,
                             s.hi + 1.0, hbps, quad);
  auto h = [&H](double z) { return H(z)[0]; };

  std::vector<double> obps;
  for (double x : bps) {
    obps.push_back(x);
    obps.push_back(x - 0.5);
  }
  obps.push_back(0.5);
  auto J = [&](double t) {
    const double y0 = std::max(0.0, t - 0.5);
    return h(t + 0.5) - h(y0 + 0.5) - (t - y0) * c(t);
  };
  auto integrand = [&](double t) {
    const double inner = c(t + 0.5) - c(t);
    const double j = std::abs(J(t));
    const double second = t < 0.5 ? std::pow(j / t, pc) : std::pow(j, pc);
    return std::array<double, 2>{std::pow(std::abs(inner), pc), second};
  };
  const auto out = integrate_vec<2>(integrand, t0, s.hi, quad, obps);
  const double a = std::pow(out.value[0], 1.0 / pc);
  const double b = std::pow(out.value[1], 1.0 / pc);
  r.value = a + b;
  r.est_error = root_error(out.value[0], out.error[0], pc) + root_error(out.value[1], out.error[1], pc);
  r.components = {{"term1", a}, {"term2", b}};
  if (!out.converged) r.warnings.push_back("quadrature did not reach tolerance");
  return r;
}

HalfLineFunction truncate(const HalfLineFunction& g, const EtaGrid& grid, int N) {
  require(N >= 0 && grid.has(-N) && grid.has(N),
          "truncate: N=" + std::to_string(N) + " outside the grid range");
  return fn::restrict_to(g, grid[-N], grid[N]).with_label(g.label() + "|N=" + std::to_string(N));
}

double dual_lp_norm(const HalfLineFunction& g, const Weight& v0, double p_conj,
                    const QuadratureSpec& quad) {
  if (g.is_zero()) return 0.0;
  const Interval s = g.support_or(quad.truncation);
  auto integrand = [&](double x) {
    const double gx = g(x);
    if (gx == 0.0) return 0.0;
    return std::pow(std::abs(gx) / v0(x), p_conj);
  };
  const QuadResult out = integrate(integrand, s.lo, s.hi, quad, g.breakpoints());
  return std::pow(out.value, 1.0 / p_conj);
}

}  // namespace assocnorm
