#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "assocnorm/quadrature.hpp"

namespace assocnorm {

/// A test function on (0, ∞): evaluator, optional derivative, optional compact
/// support, and the kinks quadrature should split at.
class HalfLineFunction {
 public:
  using Fn = std::function<double(double)>;

  /// The zero function.
  HalfLineFunction();
  HalfLineFunction(Fn f, std::optional<Fn> derivative, std::optional<Interval> support,
                   std::vector<double> breakpoints, std::string label);

  double operator()(double x) const;
  bool has_derivative() const { return static_cast<bool>(df_); }
  /// Throws derivative-required when no derivative was declared.
  double derivative(double x) const;

  const std::optional<Interval>& support() const { return support_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::string& label() const { return label_; }
  bool is_zero() const { return zero_; }

  /// Support if declared, else the given fallback window.
  Interval support_or(const Interval& fallback) const { return support_.value_or(fallback); }

  HalfLineFunction with_label(std::string label) const;

 private:
  std::shared_ptr<const Fn> f_;
  std::shared_ptr<const Fn> df_;
  std::optional<Interval> support_;
  std::vector<double> breakpoints_;
  std::string label_;
  bool zero_ = false;
};

namespace fn {

HalfLineFunction zero();
/// χ_[lo, hi]
HalfLineFunction indicator(double lo, double hi, double height = 1.0);
/// Constant c on [lo, hi], zero elsewhere (same as indicator, kept for intent).
HalfLineFunction constant_on(double lo, double hi, double c);
/// Piecewise-linear hat: 0 at lo, `height` at peak, 0 at hi.
HalfLineFunction hat(double lo, double peak, double hi, double height = 1.0);
/// Piecewise-linear interpolant through (xs, ys); zero outside [xs.front(), xs.back()].
HalfLineFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys,
                                  std::string label = "pwl");
/// (1 − s²)² on [lo, hi] with s mapped to [−1, 1]; C¹, zero outside.
HalfLineFunction quartic_bump(double lo, double hi, double height = 1.0);
/// 1 on [lo + ramp, hi − ramp], smoothstep ramps of width `ramp`, zero outside.
HalfLineFunction plateau(double lo, double hi, double ramp, double height = 1.0);
/// Evaluator on (0, ∞) without declared support.
HalfLineFunction from_callable(HalfLineFunction::Fn f, std::string label,
                               std::optional<HalfLineFunction::Fn> derivative = std::nullopt);

HalfLineFunction scale(const HalfLineFunction& f, double c);
HalfLineFunction sum(const HalfLineFunction& f, const HalfLineFunction& g);
HalfLineFunction difference(const HalfLineFunction& f, const HalfLineFunction& g);
HalfLineFunction linear_combination(const std::vector<HalfLineFunction>& fs,
                                    const std::vector<double>& coeffs, std::string label);
/// f·χ_[lo, hi]
HalfLineFunction restrict_to(const HalfLineFunction& f, double lo, double hi);
/// Piecewise-linear sampling of f on n+1 points of its support (kinks kept).
HalfLineFunction tabulate(const HalfLineFunction& f, std::size_t n);

}  // namespace fn

/// Spot check that f vanishes outside its declared support.
bool support_consistent(const HalfLineFunction& f, int samples = 64);

}  // namespace assocnorm
