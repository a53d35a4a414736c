#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "assocnorm/error.hpp"
#include "assocnorm/quadrature.hpp"

namespace assocnorm {

/// Exponent p in (1, ∞) together with its conjugate p' = p / (p - 1).
struct ExponentPair {
  double p = 2.0;
  double p_conj = 2.0;

  static ExponentPair from_p(double p);
};

enum class WeightFamily { unit, power, custom };

/// A nonnegative weight on (0, ∞). Unit and power weights x^γ carry closed-form
/// integrals of their powers; custom weights are integrated numerically.
class Weight {
 public:
  static Weight unit();
  static Weight power(double gamma);
  static Weight custom(std::function<double(double)> fn, std::string label);

  double operator()(double x) const;

  WeightFamily family() const { return family_; }
  /// Exponent γ of x^γ (0 for the unit weight, NaN for custom weights).
  double gamma() const { return gamma_; }
  bool has_closed_form() const { return family_ != WeightFamily::custom; }
  const std::string& label() const { return label_; }

  /// ∫_s^t w^r for 0 <= s < t <= ∞ in closed form, nullopt for custom weights.
  /// Throws DivergentIntegral naming the offending endpoint.
  std::optional<double> closed_power_integral(double r, double s, double t) const;

 private:
  Weight(WeightFamily family, double gamma, std::function<double(double)> fn, std::string label);

  WeightFamily family_;
  double gamma_;
  std::shared_ptr<const std::function<double(double)>> fn_;
  std::string label_;
};

/// The pair (v0, v1) with exponent p. Construction samples both weights on a
/// log-spaced grid and rejects negative or non-finite values.
struct WeightPair {
  Weight v0;
  Weight v1;
  ExponentPair exponents;

  WeightPair(Weight v0_, Weight v1_, double p);

  double p() const { return exponents.p; }
  double p_conj() const { return exponents.p_conj; }
  bool is_unit() const {
    return v0.family() == WeightFamily::unit && v1.family() == WeightFamily::unit;
  }
};

/// ∫_s^t w(x)^r dx, closed form when available. `t` may be +∞ and `s` may be 0;
/// infinite ends are resolved by interval doubling/halving toward the endpoint.
double integrate_power(const Weight& w, double r, double s, double t, const QuadratureSpec& quad);

enum class Divergence { converges, diverges, undetermined };
const char* to_string(Divergence d);

struct EndpointProbe {
  Divergence status = Divergence::undetermined;
  double partial = 0.0;  // last partial integral (exact value when converged)
  int steps = 0;
};

/// Decides whether ∫ w^r diverges toward 0 (Side::lower, over (0, anchor)) or
/// toward ∞ (Side::upper, over (anchor, ∞)). Closed forms decide exactly;
/// otherwise partial integrals over doubling intervals are declared divergent
/// past kDivergenceThreshold and convergent once increments are negligible.
EndpointProbe probe_endpoint(const Weight& w, double r, double anchor, Side side,
                             const QuadratureSpec& quad);

inline constexpr double kDivergenceThreshold = 1e12;
inline constexpr int kProbeSteps = 1000;

struct S6Report {
  double c = 1.0;
  /// Factors ∫ v1^{-p'} and ∫ v0^p on (0, c) and on (c, ∞).
  EndpointProbe left_v1, left_v0, right_v1, right_v0;
  Divergence left = Divergence::undetermined;   // product on (0, c)
  Divergence right = Divergence::undetermined;  // product on (c, ∞)

  bool satisfied() const {
    return left == Divergence::diverges && right == Divergence::diverges;
  }
  bool undetermined() const {
    return left == Divergence::undetermined || right == Divergence::undetermined;
  }
  std::string describe() const;
};

S6Report check_S6(const WeightPair& pair, double c, const QuadratureSpec& quad = {});

/// Spot check that v1^{-p'} is integrable on [x, 2x] for x = 10^-3 .. 10^3.
bool spot_check_local_integrability(const WeightPair& pair, const QuadratureSpec& quad = {});

/// Cumulative mass of the density ρ = w^r on (0, ∞). The equilibrium solver
/// works exclusively through this interface.
class Mass {
 public:
  virtual ~Mass() = default;

  virtual double density(double x) const = 0;
  /// ∫_s^t ρ for 0 <= s <= t <= ∞; +∞ when a tail diverges.
  virtual double between(double s, double t) const = 0;
  double left_of(double t) const { return between(0.0, t); }
  double right_of(double t) const { return between(t, std::numeric_limits<double>::infinity()); }
  /// x < t with ∫_x^t ρ = m, or 0 when m >= left_of(t).
  virtual double solve_left(double t, double m) const = 0;
  /// x > t with ∫_t^x ρ = m, or +∞ when m >= right_of(t).
  virtual double solve_right(double t, double m) const = 0;
};

std::shared_ptr<const Mass> make_mass(const Weight& w, double r, const QuadratureSpec& quad);

}  // namespace assocnorm
