#include "assocnorm/function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "assocnorm/error.hpp"

namespace assocnorm {

namespace {

std::string num(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::optional<Interval> hull(const std::optional<Interval>& a, const std::optional<Interval>& b) {
  if (!a || !b) return std::nullopt;
  return Interval{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
}

}  // namespace

HalfLineFunction::HalfLineFunction()
    : f_(std::make_shared<const Fn>([](double) { return 0.0; })),
      df_(std::make_shared<const Fn>([](double) { return 0.0; })),
      label_("zero"),
      zero_(true) {}

HalfLineFunction::HalfLineFunction(Fn f, std::optional<Fn> derivative,
                                   std::optional<Interval> support,
                                   std::vector<double> breakpoints, std::string label)
    : f_(std::make_shared<const Fn>(std::move(f))),
      df_(derivative && *derivative ? std::make_shared<const Fn>(std::move(*derivative))
                                    : nullptr),
      support_(support),
      label_(std::move(label)) {
  require(static_cast<bool>(*f_), "HalfLineFunction needs an evaluator");
  if (support_) {
    require(support_->lo >= 0.0 && support_->hi > support_->lo && std::isfinite(support_->hi),
            "support must be a bounded interval [lo, hi] with 0 <= lo < hi");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  breakpoints_ = std::move(breakpoints);
}

double HalfLineFunction::operator()(double x) const {
  if (zero_) return 0.0;
  if (support_ && (x < support_->lo || x > support_->hi)) return 0.0;
  return (*f_)(x);
}

double HalfLineFunction::derivative(double x) const {
  if (zero_) return 0.0;
  if (!df_) fail(ErrorKind::derivative_required, "function '" + label_ + "' has no derivative");
  if (support_ && (x < support_->lo || x > support_->hi)) return 0.0;
  return (*df_)(x);
}

HalfLineFunction HalfLineFunction::with_label(std::string label) const {
  HalfLineFunction out = *this;
  out.label_ = std::move(label);
  return out;
}

namespace fn {

HalfLineFunction zero() { return HalfLineFunction(); }

HalfLineFunction indicator(double lo, double hi, double height) {
  require(lo < hi, "indicator: need lo < hi");
  return HalfLineFunction([height](double) { return height; }, [](double) { return 0.0; },
                          Interval{lo, hi}, {lo, hi},
                          "chi[" + num(lo) + "," + num(hi) + "]" +
                              (height == 1.0 ? "" : "*" + num(height)));
}

HalfLineFunction constant_on(double lo, double hi, double c) { return indicator(lo, hi, c); }

HalfLineFunction hat(double lo, double peak, double hi, double height) {
  require(lo < peak && peak < hi, "hat: need lo < peak < hi");
  auto f = [=](double x) {
    return x <= peak ? height * (x - lo) / (peak - lo) : height * (hi - x) / (hi - peak);
  };
  auto df = [=](double x) { return x < peak ? height / (peak - lo) : -height / (hi - peak); };
  return HalfLineFunction(f, df, Interval{lo, hi}, {lo, peak, hi},
                          "hat[" + num(lo) + "," + num(peak) + "," + num(hi) + "]");
}

HalfLineFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys,
                                  std::string label) {
  require(xs.size() >= 2 && xs.size() == ys.size(), "piecewise_linear: need matching nodes");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    require(xs[i] > xs[i - 1], "piecewise_linear: nodes must increase");
  }
  auto data = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(xs, ys);
  auto locate = [data](double x) {
    const auto& X = data->first;
    auto it = std::upper_bound(X.begin(), X.end(), x);
    std::size_t j = static_cast<std::size_t>(it - X.begin());
    j = std::clamp<std::size_t>(j, 1, X.size() - 1);
    return j - 1;
  };
  auto f = [data, locate](double x) {
    const auto& [X, Y] = *data;
    const std::size_t j = locate(x);
    const double s = (x - X[j]) / (X[j + 1] - X[j]);
    return Y[j] + s * (Y[j + 1] - Y[j]);
  };
  auto df = [data, locate](double x) {
    const auto& [X, Y] = *data;
    const std::size_t j = locate(x);
    return (Y[j + 1] - Y[j]) / (X[j + 1] - X[j]);
  };
  const Interval support{xs.front(), xs.back()};
  return HalfLineFunction(f, df, support, xs, std::move(label));
}

HalfLineFunction quartic_bump(double lo, double hi, double height) {
  require(lo < hi, "quartic_bump: need lo < hi");
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  auto f = [=](double x) {
    const double s = (x - c) / r;
    const double q = 1.0 - s * s;
    return height * q * q;
  };
  auto df = [=](double x) {
    const double s = (x - c) / r;
    return height * 2.0 * (1.0 - s * s) * (-2.0 * s) / r;
  };
  return HalfLineFunction(f, df, Interval{lo, hi}, {lo, c, hi},
                          "bump[" + num(lo) + "," + num(hi) + "]");
}

HalfLineFunction plateau(double lo, double hi, double ramp, double height) {
  require(lo < hi && ramp > 0.0 && 2.0 * ramp <= hi - lo, "plateau: need 0 < 2 ramp <= hi - lo");
  auto step = [](double s) { return s * s * (3.0 - 2.0 * s); };
  auto dstep = [](double s) { return 6.0 * s * (1.0 - s); };
  auto f = [=](double x) {
    if (x < lo + ramp) return height * step((x - lo) / ramp);
    if (x > hi - ramp) return height * step((hi - x) / ramp);
    return height;
  };
  auto df = [=](double x) {
    if (x < lo + ramp) return height * dstep((x - lo) / ramp) / ramp;
    if (x > hi - ramp) return -height * dstep((hi - x) / ramp) / ramp;
    return 0.0;
  };
  return HalfLineFunction(f, df, Interval{lo, hi}, {lo, lo + ramp, hi - ramp, hi},
                          "plateau[" + num(lo) + "," + num(hi) + "]");
}

HalfLineFunction from_callable(HalfLineFunction::Fn f, std::string label,
                               std::optional<HalfLineFunction::Fn> derivative) {
  return HalfLineFunction(std::move(f), std::move(derivative), std::nullopt, {},
                          std::move(label));
}

HalfLineFunction scale(const HalfLineFunction& f, double c) {
  if (f.is_zero() || c == 0.0) return zero();
  std::optional<HalfLineFunction::Fn> df;
  if (f.has_derivative()) df = [f, c](double x) { return c * f.derivative(x); };
  return HalfLineFunction([f, c](double x) { return c * f(x); }, df, f.support(),
                          f.breakpoints(), num(c) + "*" + f.label());
}

HalfLineFunction linear_combination(const std::vector<HalfLineFunction>& fs,
                                    const std::vector<double>& coeffs, std::string label) {
  require(fs.size() == coeffs.size(), "linear_combination: size mismatch");
  std::vector<HalfLineFunction> terms;
  std::vector<double> cs;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!fs[i].is_zero() && coeffs[i] != 0.0) {
      terms.push_back(fs[i]);
      cs.push_back(coeffs[i]);
    }
  }
  if (terms.empty()) return zero().with_label(std::move(label));
  std::optional<Interval> support = terms.front().support();
  std::vector<double> bps;
  bool differentiable = true;
  for (const auto& t : terms) {
    support = hull(support, t.support());
    bps = merged(bps, t.breakpoints());
    differentiable = differentiable && t.has_derivative();
  }
  auto f = [terms, cs](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) s += cs[i] * terms[i](x);
    return s;
  };
  std::optional<HalfLineFunction::Fn> df;
  if (differentiable) {
    df = [terms, cs](double x) {
      double s = 0.0;
      for (std::size_t i = 0; i < terms.size(); ++i) s += cs[i] * terms[i].derivative(x);
      return s;
    };
  }
  return HalfLineFunction(f, df, support, bps, std::move(label));
}

HalfLineFunction sum(const HalfLineFunction& f, const HalfLineFunction& g) {
  return linear_combination({f, g}, {1.0, 1.0}, f.label() + "+" + g.label());
}

HalfLineFunction difference(const HalfLineFunction& f, const HalfLineFunction& g) {
  return linear_combination({f, g}, {1.0, -1.0}, f.label() + "-" + g.label());
}

HalfLineFunction restrict_to(const HalfLineFunction& f, double lo, double hi) {
  require(lo < hi, "restrict_to: need lo < hi");
  if (f.is_zero()) return f;
  Interval s{lo, hi};
  if (f.support()) {
    s.lo = std::max(lo, f.support()->lo);
    s.hi = std::min(hi, f.support()->hi);
    if (!(s.hi > s.lo)) return zero();
  }
  std::vector<double> bps{s.lo, s.hi};
  for (double x : f.breakpoints()) {
    if (x > s.lo && x < s.hi) bps.push_back(x);
  }
  std::optional<HalfLineFunction::Fn> df;
  if (f.has_derivative()) df = [f](double x) { return f.derivative(x); };
  return HalfLineFunction([f](double x) { return f(x); }, df, s, bps,
                          f.label() + "|[" + num(lo) + "," + num(hi) + "]");
}

HalfLineFunction tabulate(const HalfLineFunction& f, std::size_t n) {
  require(f.support().has_value(), "tabulate: function needs a declared support");
  require(n >= 2, "tabulate: need at least 2 intervals");
  const Interval s = *f.support();
  std::vector<double> xs;
  for (std::size_t i = 0; i <= n; ++i) {
    xs.push_back(s.lo + (s.hi - s.lo) * static_cast<double>(i) / static_cast<double>(n));
  }
  xs = merged(xs, f.breakpoints());
  xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return x < s.lo || x > s.hi; }),
           xs.end());
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(f(x));
  return piecewise_linear(std::move(xs), std::move(ys), "tab(" + f.label() + ")");
}

}  // namespace fn

bool support_consistent(const HalfLineFunction& f, int samples) {
  if (!f.support()) return true;
  const Interval s = *f.support();
  for (int i = 1; i <= samples; ++i) {
    const double frac = static_cast<double>(i) / samples;
    if (s.lo > 0.0 && f(s.lo * frac * 0.999) != 0.0) return false;
    if (f(s.hi * (1.0 + frac)) != 0.0) return false;
  }
  return true;
}

}  // namespace assocnorm
