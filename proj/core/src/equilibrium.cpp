#include "assocnorm/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include <boost/math/tools/roots.hpp>

namespace assocnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn10 = 2.302585092994045684;

std::string fmt_t(double t) {
  std::ostringstream out;
  out.precision(12);
  out << t;
  return out.str();
}

/// Nested solver: everything is parametrized by the half-mass m = e^s of w.
struct Solver {
  std::shared_ptr<const Mass> W;
  std::shared_ptr<const Mass> U;
  double p = 2.0;
  double pc = 2.0;

  double phi(double m, double u_mass) const {
    const double v = std::log(2.0 * m) / pc + std::log(u_mass) / p;
    return std::clamp(v, -1e10, 1e10);
  }

  /// Root of an increasing φ on (−∞, s_max].
  template <class Phi>
  double root(Phi phi_of_s, double s_max, double t, Side limiting, const char* what) const {
    const double s0 = std::isfinite(s_max) ? std::min(0.0, s_max) : 0.0;
    double f0 = phi_of_s(s0);
    if (f0 == 0.0) return s0;
    double lo = s0, hi = s0, flo = f0, fhi = f0;
    if (f0 > 0.0) {
      for (;;) {
        hi = lo;
        fhi = flo;
        lo -= 2.0;
        if (lo < -1400.0) {
          throw WindowUnsolvable(t, limiting, std::string("window-unsolvable at t=") + fmt_t(t) +
                                                  ": " + what + " (no lower bracket)");
        }
        flo = phi_of_s(lo);
        if (flo <= 0.0) break;
      }
    } else {
      for (;;) {
        lo = hi;
        flo = fhi;
        if (std::isfinite(s_max) && hi >= s_max) {
          throw WindowUnsolvable(
              t, limiting,
              std::string("window-unsolvable at t=") + fmt_t(t) + ": " + what +
                  (limiting == Side::lower ? " (mass exhausted toward 0)"
                                           : " (mass exhausted toward infinity)"));
        }
        hi = std::isfinite(s_max) ? std::min(hi + 2.0, s_max) : hi + 2.0;
        if (hi > 1400.0) {
          throw WindowUnsolvable(t, limiting, std::string("window-unsolvable at t=") + fmt_t(t) +
                                                  ": " + what + " (no upper bracket)");
        }
        fhi = phi_of_s(hi);
        if (fhi >= 0.0) break;
      }
    }
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    boost::uintmax_t iters = 200;
    auto tol = [](double x, double y) {
      return std::abs(y - x) <= 1e-15 * std::max(1.0, std::abs(x));
    };
    const auto r = boost::math::tools::toms748_solve(phi_of_s, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
  }

  Window window(double t) const {
    require(t > 0.0 && std::isfinite(t), "window: t must lie in (0, inf)");
    const double left = W->left_of(t);
    const double right = W->right_of(t);
    const double m_max = std::min(left, right);
    const Side limiting = left <= right ? Side::lower : Side::upper;
    auto phi_s = [&](double s) {
      const double m = std::exp(s);
      const double a = W->solve_left(t, m);
      const double b = W->solve_right(t, m);
      return phi(m, U->between(a, b));
    };
    const double s = root(phi_s, std::log(m_max), t, limiting, "normalization cannot be met");
    const double m = std::exp(s);
    return {W->solve_left(t, m), W->solve_right(t, m)};
  }

  double a_inv(double t) const {
    require(t > 0.0 && std::isfinite(t), "a_inv: t must lie in (0, inf)");
    const double m_max = 0.5 * W->right_of(t);
    auto phi_s = [&](double s) {
      const double m = std::exp(s);
      return phi(m, U->between(t, W->solve_right(t, 2.0 * m)));
    };
    const double s = root(phi_s, std::log(m_max), t, Side::upper, "inverse of a");
    return W->solve_right(t, std::exp(s));
  }

  double b_inv(double t) const {
    require(t > 0.0 && std::isfinite(t), "b_inv: t must lie in (0, inf)");
    const double m_max = 0.5 * W->left_of(t);
    auto phi_s = [&](double s) {
      const double m = std::exp(s);
      return phi(m, U->between(W->solve_left(t, 2.0 * m), t));
    };
    const double s = root(phi_s, std::log(m_max), t, Side::lower, "inverse of b");
    return W->solve_left(t, std::exp(s));
  }
};

enum Fn { kA = 0, kB = 1, kAinv = 2, kBinv = 3 };

struct Block {
  bool valid = false;
  int n = 0;
  std::vector<double> r;  // ln(f(t)/t) at u = ln10·(d + j/n), j = −1..n+1
};

/// Decade blocks of r(u) = ln(f(e^u)/e^u) with 4-point Lagrange interpolation.
class FunctionCache {
 public:
  template <class Direct>
  double lookup(double t, const Direct& direct, const EquilibriumOptions& opt) const {
    const double x = std::log(t) / kLn10;
    const int d = static_cast<int>(std::floor(x));
    const Block* block = nullptr;
    {
      std::shared_lock lock(mutex_);
      auto it = blocks_.find(d);
      if (it != blocks_.end()) block = &it->second;
    }
    if (block == nullptr) {
      Block fresh = build(d, direct, opt);
      std::unique_lock lock(mutex_);
      block = &blocks_.emplace(d, std::move(fresh)).first->second;
    }
    if (!block->valid) return direct(t);
    return t * std::exp(interpolate(*block, x - d));
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return blocks_.size();
  }

 private:
  static double interpolate(const Block& blk, double frac) {
    const double pos = frac * blk.n;
    int j = static_cast<int>(std::floor(pos));
    j = std::clamp(j, 0, blk.n - 1);
    const double s = pos - j;
    // nodes j-1, j, j+1, j+2 live at r[j], r[j+1], r[j+2], r[j+3]
    const double* y = &blk.r[static_cast<std::size_t>(j)];
    const double l0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double l1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double l2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double l3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
  }

  template <class Direct>
  static Block build(int d, const Direct& direct, const EquilibriumOptions& opt) {
    Block blk;
    for (int n = opt.nodes_per_decade; n <= opt.max_nodes_per_decade; n *= 2) {
      blk.n = n;
      blk.r.assign(static_cast<std::size_t>(n + 3), 0.0);
      try {
        for (int j = -1; j <= n + 1; ++j) {
          const double t = std::pow(10.0, d + static_cast<double>(j) / n);
          const double v = direct(t);
          if (!(v > 0.0) || !std::isfinite(v)) return Block{};
          blk.r[static_cast<std::size_t>(j + 1)] = std::log(v / t);
        }
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
          const double frac = (j + 0.5) / n;
          const double t = std::pow(10.0, d + frac);
          const double exact = direct(t);
          const double approx = t * std::exp(interpolate(blk, frac));
          ok = std::abs(approx - exact) <= opt.cache_tol * std::abs(exact);
        }
        if (ok) {
          blk.valid = true;
          return blk;
        }
      } catch (const Error&) {
        return Block{};
      }
    }
    return Block{};
  }

  mutable std::shared_mutex mutex_;
  mutable std::map<int, Block> blocks_;
};

}  // namespace

struct EquilibriumSolution::State {
  WeightPair pair;
  EquilibriumOptions options;
  S6Report s6;
  Solver solver;
  std::shared_ptr<std::array<FunctionCache, 4>> caches;

  double direct(int fn, double t) const {
    switch (fn) {
      case kA: return solver.window(t).a;
      case kB: return solver.window(t).b;
      case kAinv: return solver.a_inv(t);
      default: return solver.b_inv(t);
    }
  }

  double eval(int fn, double t) const {
    require(t > 0.0 && std::isfinite(t), "equilibrium functions need t in (0, inf)");
    if (!options.use_cache) return direct(fn, t);
    auto d = [this, fn](double x) { return direct(fn, x); };
    return (*caches)[static_cast<std::size_t>(fn)].lookup(t, d, options);
  }
};

EquilibriumSolution::EquilibriumSolution(WeightPair pair, EquilibriumOptions options) {
  require(options.tol > 0.0, "equilibrium tolerance must be positive");
  require(options.nodes_per_decade >= 4, "nodes_per_decade must be at least 4");
  options.quad.validate();
  auto state = std::make_shared<State>(State{std::move(pair), options, {}, {}, nullptr});
  state->s6 = check_S6(state->pair, options.s6_anchor, options.quad);
  if (options.require_s6 && !state->s6.satisfied()) {
    fail(ErrorKind::domain,
         "weight pair does not satisfy the two-sided divergence condition (" +
             state->s6.describe() + "); pass require_s6=false to override");
  }
  state->solver.W = make_mass(state->pair.v1, -state->pair.p_conj(), options.quad);
  state->solver.U = make_mass(state->pair.v0, state->pair.p(), options.quad);
  state->solver.p = state->pair.p();
  state->solver.pc = state->pair.p_conj();
  state->caches = std::make_shared<std::array<FunctionCache, 4>>();
  state_ = std::move(state);
}

EquilibriumSolution::EquilibriumSolution(std::shared_ptr<const State> state)
    : state_(std::move(state)) {}

const WeightPair& EquilibriumSolution::pair() const { return state_->pair; }
const EquilibriumOptions& EquilibriumSolution::options() const { return state_->options; }
const S6Report& EquilibriumSolution::s6() const { return state_->s6; }
const Mass& EquilibriumSolution::w_mass() const { return *state_->solver.W; }
const Mass& EquilibriumSolution::u_mass() const { return *state_->solver.U; }

Window EquilibriumSolution::window(double t) const {
  if (!state_->options.use_cache) return state_->solver.window(t);
  return {a(t), b(t)};
}
double EquilibriumSolution::a(double t) const { return state_->eval(kA, t); }
double EquilibriumSolution::b(double t) const { return state_->eval(kB, t); }
double EquilibriumSolution::a_inv(double t) const { return state_->eval(kAinv, t); }
double EquilibriumSolution::b_inv(double t) const { return state_->eval(kBinv, t); }

double EquilibriumSolution::V1(double t) const {
  const Window w = window(t);
  return w_mass().between(w.a, w.b);
}
double EquilibriumSolution::V1_minus(double t) const { return w_mass().between(a(t), t); }
double EquilibriumSolution::V1_plus(double t) const { return w_mass().between(t, b(t)); }
double EquilibriumSolution::V0(double t) const {
  const Window w = window(t);
  return u_mass().between(w.a, w.b);
}
double EquilibriumSolution::V0_minus(double t) const { return u_mass().between(a(t), t); }
double EquilibriumSolution::V0_plus(double t) const { return u_mass().between(t, b(t)); }

Residuals EquilibriumSolution::residuals(double t) const {
  const Window w = state_->solver.window(t);
  const double left = w_mass().between(w.a, t);
  const double right = w_mass().between(t, w.b);
  const double v1 = w_mass().between(w.a, w.b);
  const double v0 = u_mass().between(w.a, w.b);
  return {std::abs(left - right),
          std::abs(std::pow(v1, 1.0 / p_conj()) * std::pow(v0, 1.0 / p()) - 1.0)};
}

EquilibriumSolution EquilibriumSolution::without_cache() const {
  auto copy = std::make_shared<State>(*state_);
  copy->options.use_cache = false;
  return EquilibriumSolution(std::shared_ptr<const State>(std::move(copy)));
}

std::size_t EquilibriumSolution::cached_blocks() const {
  std::size_t total = 0;
  for (const auto& c : *state_->caches) total += c.size();
  return total;
}

Window solve_window(const WeightPair& pair, double t, double tol) {
  require(tol > 0.0, "solve_window: tol must be positive");
  Solver s;
  QuadratureSpec quad;
  s.W = make_mass(pair.v1, -pair.p_conj(), quad);
  s.U = make_mass(pair.v0, pair.p(), quad);
  s.p = pair.p();
  s.pc = pair.p_conj();
  return s.window(t);
}

std::optional<int> EtaGrid::cell_of(double t) const {
  for (int k = lowest + 1; k <= highest; ++k) {
    if (t >= (*this)[k - 1] && t <= (*this)[k]) return k;
  }
  return std::nullopt;
}

EtaGrid build_eta_grid(const EquilibriumSolution& sol, int N) {
  require(N >= 1, "grid half-width N must be at least 1");
  const EquilibriumSolution direct = sol.without_cache();
  std::vector<double> up{1.0};
  std::vector<double> down;
  std::ostringstream note;
  for (int k = 1; k <= N; ++k) {
    try {
      const double next = direct.a_inv(up.back());
      if (!std::isfinite(next) || !(next > up.back())) {
        note << "upward walk stopped at k=" << k - 1 << "; ";
        break;
      }
      up.push_back(next);
    } catch (const Error& e) {
      note << "upward walk stopped at k=" << k - 1 << " (" << e.what() << "); ";
      break;
    }
  }
  double current = 1.0;
  for (int k = 1; k <= N; ++k) {
    try {
      const double next = direct.a(current);
      if (!(next > 0.0) || !(next < current)) {
        note << "downward walk stopped at k=" << -(k - 1) << " (reached 0); ";
        break;
      }
      down.push_back(next);
      current = next;
    } catch (const Error& e) {
      note << "downward walk stopped at k=" << -(k - 1) << " (" << e.what() << "); ";
      break;
    }
  }
  EtaGrid grid;
  grid.requested = N;
  grid.lowest = -static_cast<int>(down.size());
  grid.highest = static_cast<int>(up.size()) - 1;
  grid.values.assign(down.rbegin(), down.rend());
  grid.values.insert(grid.values.end(), up.begin(), up.end());
  grid.note = note.str();
  return grid;
}

double check_identity(const EquilibriumSolution& sol, double t, double h) {
  if (!(h > 0.0)) h = std::max(1e-6 * t, 1e-9);
  require(t - h > 0.0, "check_identity: t - h must stay positive");
  const EquilibriumSolution direct = sol.without_cache();
  const Window lo = direct.window(t - h);
  const Window hi = direct.window(t + h);
  const Window mid = direct.window(t);
  const double da = (hi.a - lo.a) / (2.0 * h);
  const double db = (hi.b - lo.b) / (2.0 * h);
  return std::abs(sol.w(mid.a) * da + sol.w(mid.b) * db - 2.0 * sol.w(t));
}

}  // namespace assocnorm
