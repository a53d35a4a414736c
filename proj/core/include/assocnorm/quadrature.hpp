#pragma once

// Adaptive Gauss-Kronrod (7/15) integration with registered breakpoints, and a
// panelized cumulative integral used by every nested functional.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "assocnorm/error.hpp"

namespace assocnorm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdiv = 1'000'000;
  /// Window used for outer integrals when a function declares no support.
  Interval truncation{1e-3, 1e3};

  void validate() const;
  /// Same spec with both tolerances divided by `factor`.
  QuadratureSpec tightened(double factor) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
};

namespace detail {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Gk15Rule {
  std::array<double, 8> x;   // Kronrod abscissae, x[0] = 0
  std::array<double, 8> wk;  // Kronrod weights
  std::array<double, 4> wg;  // Gauss weights for x[0], x[2], x[4], x[6]
};

const Gk15Rule& gk15_rule();

template <std::size_t N>
struct PanelEstimate {
  double a = 0.0;
  double b = 0.0;
  Vec<N> value{};
  Vec<N> error{};
  Vec<N> abs_value{};

  double worst_error() const { return *std::max_element(error.begin(), error.end()); }
};

/// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
template <std::size_t N, class F>
PanelEstimate<N> gk15(const F& f, double a, double b) {
  const Gk15Rule& rule = gk15_rule();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();

  std::array<Vec<N>, 15> fv;
  fv[0] = f(c);
  for (std::size_t j = 1; j < 8; ++j) {
    const double dx = h * rule.x[j];
    fv[2 * j - 1] = f(c - dx);
    fv[2 * j] = f(c + dx);
  }

  PanelEstimate<N> out;
  out.a = a;
  out.b = b;
  for (std::size_t i = 0; i < N; ++i) {
    double resk = rule.wk[0] * fv[0][i];
    double resg = rule.wg[0] * fv[0][i];
    double resabs = rule.wk[0] * std::abs(fv[0][i]);
    for (std::size_t j = 1; j < 8; ++j) {
      const double f1 = fv[2 * j - 1][i];
      const double f2 = fv[2 * j][i];
      resk += rule.wk[j] * (f1 + f2);
      resabs += rule.wk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 0) resg += rule.wg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = rule.wk[0] * std::abs(fv[0][i] - mean);
    for (std::size_t j = 1; j < 8; ++j) {
      resasc += rule.wk[j] *
                (std::abs(fv[2 * j - 1][i] - mean) + std::abs(fv[2 * j][i] - mean));
    }
    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    out.value[i] = resk * h;
    out.error[i] = err;
    out.abs_value[i] = resabs;
  }
  return out;
}

inline std::vector<double> panel_edges(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> edges;
  edges.reserve(breakpoints.size() + 2);
  edges.push_back(a);
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

template <std::size_t N>
struct AdaptiveOutcome {
  std::vector<PanelEstimate<N>> panels;  // sorted by position
  Vec<N> value{};
  Vec<N> error{};
  bool converged = true;
};

/// Global adaptive subdivision. The stopping scale is |value| per component, or
/// the L1 mass when `l1_scale` is set (cumulative integrals must be accurate
/// at every intermediate point, not only for the total).
template <std::size_t N, class F>
AdaptiveOutcome<N> adaptive(const F& f, double a, double b, std::span<const double> breakpoints,
                            const QuadratureSpec& spec, bool l1_scale) {
  AdaptiveOutcome<N> out;
  if (!(b > a)) return out;
  const std::vector<double> edges = panel_edges(a, b, breakpoints);

  std::vector<PanelEstimate<N>> panels;
  panels.reserve(edges.size() * 2);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> queue;

  Vec<N> value{}, error{}, scale{};
  auto add = [&](const PanelEstimate<N>& p, double sign) {
    for (std::size_t i = 0; i < N; ++i) {
      value[i] += sign * p.value[i];
      error[i] += sign * p.error[i];
      scale[i] += sign * p.abs_value[i];
    }
  };
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    panels.push_back(gk15<N>(f, edges[k], edges[k + 1]));
    add(panels.back(), 1.0);
    queue.emplace(panels.back().worst_error(), panels.size() - 1);
  }

  auto satisfied = [&] {
    for (std::size_t i = 0; i < N; ++i) {
      const double s = l1_scale ? scale[i] : std::abs(value[i]);
      // below the rounding floor of the L1 mass nothing more can be gained
      const double floor = 100.0 * std::numeric_limits<double>::epsilon() * scale[i];
      if (error[i] > std::max({spec.abs_tol, spec.rel_tol * s, floor})) return false;
    }
    return true;
  };

  std::size_t subdivisions = 0;
  while (!queue.empty() && !satisfied()) {
    if (subdivisions >= spec.max_subdiv) {
      out.converged = false;
      break;
    }
    const auto [err, idx] = queue.top();
    queue.pop();
    const PanelEstimate<N> parent = panels[idx];
    const double mid = 0.5 * (parent.a + parent.b);
    const double width = parent.b - parent.a;
    if (width <= 64.0 * std::numeric_limits<double>::epsilon() *
                     std::max(std::abs(parent.a), std::abs(parent.b))) {
      continue;  // cannot split further; leave it in place
    }
    add(parent, -1.0);
    panels[idx] = gk15<N>(f, parent.a, mid);
    panels.push_back(gk15<N>(f, mid, parent.b));
    add(panels[idx], 1.0);
    add(panels.back(), 1.0);
    queue.emplace(panels[idx].worst_error(), idx);
    queue.emplace(panels.back().worst_error(), panels.size() - 1);
    ++subdivisions;
  }
  if (!satisfied()) out.converged = false;

  std::sort(panels.begin(), panels.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  // Re-sum from scratch to drop the drift of the running updates.
  out.value = {};
  out.error = {};
  for (const auto& p : panels) {
    for (std::size_t i = 0; i < N; ++i) {
      out.value[i] += p.value[i];
      out.error[i] += p.error[i];
    }
  }
  out.panels = std::move(panels);
  return out;
}

}  // namespace detail

/// ∫_a^b f with panels split at every breakpoint inside (a, b).
template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints = {}) {
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate(f, b, a, spec, breakpoints);
    r.value = -r.value;
    return r;
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    fail(ErrorKind::invalid_argument, "integrate: endpoints must be finite");
  }
  auto wrapped = [&f](double x) { return detail::Vec<1>{static_cast<double>(f(x))}; };
  const auto outcome = detail::adaptive<1>(wrapped, a, b, breakpoints, spec, false);
  return {outcome.value[0], outcome.error[0], outcome.panels.size(), outcome.converged};
}

/// Cumulative integral y ↦ ∫_lo^y f of a vector integrand. Panels are refined
/// once at construction; a query is the stored prefix sum plus one
/// Gauss-Kronrod panel on the partial piece, so every query sees the same
/// panel partition.
template <std::size_t N>
class PanelCumulative {
 public:
  using Vec = std::array<double, N>;
  using Integrand = std::function<Vec(double)>;

  PanelCumulative() = default;

  PanelCumulative(Integrand f, double lo, double hi, std::span<const double> breakpoints,
                  const QuadratureSpec& spec)
      : f_(std::move(f)), lo_(lo), hi_(hi) {
    total_.fill(0.0);
    error_.fill(0.0);
    if (!(hi > lo)) {
      hi_ = lo_;
      return;
    }
    auto outcome = detail::adaptive<N>(f_, lo, hi, breakpoints, spec, true);
    converged_ = outcome.converged;
    error_ = outcome.error;
    edges_.reserve(outcome.panels.size() + 1);
    prefix_.reserve(outcome.panels.size() + 1);
    Vec run{};
    for (const auto& p : outcome.panels) {
      edges_.push_back(p.a);
      prefix_.push_back(run);
      for (std::size_t i = 0; i < N; ++i) run[i] += p.value[i];
    }
    edges_.push_back(hi);
    prefix_.push_back(run);
    total_ = run;
  }

  Vec operator()(double y) const {
    if (edges_.empty() || y <= lo_) return Vec{};
    if (y >= hi_) return total_;
    auto it = std::upper_bound(edges_.begin(), edges_.end(), y);
    const std::size_t k = static_cast<std::size_t>(it - edges_.begin()) - 1;
    Vec out = prefix_[k];
    if (y > edges_[k]) {
      const auto piece = detail::gk15<N>(f_, edges_[k], y);
      for (std::size_t i = 0; i < N; ++i) out[i] += piece.value[i];
    }
    return out;
  }

  const Vec& total() const { return total_; }
  const Vec& error() const { return error_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t panel_count() const { return edges_.empty() ? 0 : edges_.size() - 1; }
  bool converged() const { return converged_; }

 private:
  Integrand f_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> edges_;
  std::vector<Vec> prefix_;
  Vec total_{};
  Vec error_{};
  bool converged_ = true;
};

}  // namespace assocnorm
