#include "assocnorm/weights.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/tools/roots.hpp>

namespace assocnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_log_case(double k) { return std::abs(k) < 1e-14; }

/// Closed-form mass of x^e on (0, ∞).
class PowerMass final : public Mass {
 public:
  explicit PowerMass(double e) : e_(e), k_(e + 1.0) {}

  double density(double x) const override { return e_ == 0.0 ? 1.0 : std::pow(x, e_); }

  double between(double s, double t) const override {
    if (!(t > s)) return 0.0;
    if (is_log_case(k_)) {
      if (s == 0.0 || std::isinf(t)) return kInf;
      return std::log(t / s);
    }
    if (s == 0.0) {
      if (k_ < 0.0 || std::isinf(t)) return kInf;
      return std::pow(t, k_) / k_;
    }
    if (std::isinf(t)) {
      if (k_ > 0.0) return kInf;
      return -std::pow(s, k_) / k_;
    }
    return std::pow(s, k_) * std::expm1(k_ * std::log(t / s)) / k_;
  }

  double solve_left(double t, double m) const override {
    if (!(m > 0.0)) return t;
    if (is_log_case(k_)) return t * std::exp(-m);
    const double z = -k_ * m * std::pow(t, -k_);
    if (!(z > -1.0)) return 0.0;
    return t * std::exp(std::log1p(z) / k_);
  }

  double solve_right(double t, double m) const override {
    if (!(m > 0.0)) return t;
    if (is_log_case(k_)) {
      const double x = t * std::exp(m);
      return std::isfinite(x) ? x : kInf;
    }
    const double z = k_ * m * std::pow(t, -k_);
    if (!(z > -1.0)) return kInf;
    const double x = t * std::exp(std::log1p(z) / k_);
    return std::isfinite(x) ? x : kInf;
  }

 private:
  double e_;
  double k_;
};

EndpointProbe probe_density(const std::function<double(double)>& rho, double anchor, Side side,
                            const QuadratureSpec& quad) {
  EndpointProbe out;
  double sum = 0.0;
  for (int j = 0; j < kProbeSteps; ++j) {
    double lo = 0.0;
    double hi = 0.0;
    if (side == Side::lower) {
      hi = std::ldexp(anchor, -j);
      lo = std::ldexp(anchor, -j - 1);
      if (!(lo > 0.0)) break;
    } else {
      lo = std::ldexp(anchor, j);
      hi = std::ldexp(anchor, j + 1);
      if (!std::isfinite(hi)) break;
    }
    const QuadResult inc = integrate(rho, lo, hi, quad);
    if (!std::isfinite(inc.value)) {
      out.status = Divergence::diverges;
      out.partial = kInf;
      out.steps = j + 1;
      return out;
    }
    sum += inc.value;
    out.partial = sum;
    out.steps = j + 1;
    if (sum > kDivergenceThreshold) {
      out.status = Divergence::diverges;
      return out;
    }
    if (j >= 8 && std::abs(inc.value) <= 1e-16 * std::abs(sum)) {
      out.status = Divergence::converges;
      return out;
    }
  }
  out.status = Divergence::undetermined;
  return out;
}

/// Tabulated cumulative of a numeric density, referenced at x = 1. Nodes are
/// log-spaced on [1e-10, 1e10]; queries add one adaptive piece to the nearest
/// node. Tails beyond the table are probed once at construction.
class NumericMass final : public Mass {
 public:
  NumericMass(std::function<double(double)> rho, const QuadratureSpec& quad)
      : rho_(std::move(rho)), quad_(quad) {
    for (int j = -kDecades * kPerDecade; j <= kDecades * kPerDecade; ++j) {
      nodes_.push_back(std::pow(10.0, static_cast<double>(j) / kPerDecade));
    }
    cum_.assign(nodes_.size(), 0.0);
    const std::size_t one = static_cast<std::size_t>(kDecades * kPerDecade);
    for (std::size_t j = one + 1; j < nodes_.size(); ++j) {
      cum_[j] = cum_[j - 1] + piece(nodes_[j - 1], nodes_[j]);
    }
    for (std::size_t j = one; j-- > 0;) {
      cum_[j] = cum_[j + 1] - piece(nodes_[j], nodes_[j + 1]);
    }
    const EndpointProbe low = probe_density(rho_, nodes_.front(), Side::lower, quad_);
    const EndpointProbe high = probe_density(rho_, nodes_.back(), Side::upper, quad_);
    lower_tail_ = low.status == Divergence::converges ? low.partial : kInf;
    upper_tail_ = high.status == Divergence::converges ? high.partial : kInf;
  }

  double density(double x) const override { return rho_(x); }

  double between(double s, double t) const override {
    if (!(t > s)) return 0.0;
    if (s == 0.0) {
      if (std::isinf(t) || std::isinf(lower_tail_)) return kInf;
      return lower_tail_ + (from_ref(t) - cum_.front());
    }
    if (std::isinf(t)) {
      if (std::isinf(upper_tail_)) return kInf;
      return upper_tail_ + (cum_.back() - from_ref(s));
    }
    if (t <= 4.0 * s) return piece(s, t);
    return from_ref(t) - from_ref(s);
  }

  double solve_left(double t, double m) const override {
    if (!(m > 0.0)) return t;
    if (m >= left_of(t)) return 0.0;
    auto f = [&](double u) { return between(std::exp(u), t) - m; };
    double hi = std::log(t);
    double lo = hi - std::log(2.0);
    while (f(lo) < 0.0) {
      hi = lo;
      lo -= std::log(2.0);
      if (lo < -745.0) return 0.0;
    }
    return std::exp(root(f, lo, hi));
  }

  double solve_right(double t, double m) const override {
    if (!(m > 0.0)) return t;
    if (m >= right_of(t)) return kInf;
    auto f = [&](double u) { return between(t, std::exp(u)) - m; };
    double lo = std::log(t);
    double hi = lo + std::log(2.0);
    while (f(hi) < 0.0) {
      lo = hi;
      hi += std::log(2.0);
      if (hi > 709.0) return kInf;
    }
    return std::exp(root(f, lo, hi));
  }

 private:
  static constexpr int kDecades = 10;
  static constexpr int kPerDecade = 4;

  double piece(double s, double t) const {
    const QuadResult r = integrate(rho_, s, t, quad_);
    if (!r.converged) {
      fail(ErrorKind::integration_failed, "numeric weight mass did not converge on a panel");
    }
    return r.value;
  }

  double from_ref(double x) const {
    if (x <= nodes_.front()) return cum_.front() - piece(x, nodes_.front());
    if (x >= nodes_.back()) return cum_.back() + piece(nodes_.back(), x);
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return cum_[j] + piece(nodes_[j], x);
  }

  template <class F>
  static double root(F& f, double lo, double hi) {
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
  }

  std::function<double(double)> rho_;
  QuadratureSpec quad_;
  std::vector<double> nodes_;
  std::vector<double> cum_;
  double lower_tail_ = kInf;
  double upper_tail_ = kInf;
};

}  // namespace

ExponentPair ExponentPair::from_p(double p) {
  require(std::isfinite(p) && p > 1.0, "exponent p must satisfy 1 < p < inf");
  return {p, p / (p - 1.0)};
}

Weight::Weight(WeightFamily family, double gamma, std::function<double(double)> fn,
               std::string label)
    : family_(family),
      gamma_(gamma),
      fn_(fn ? std::make_shared<const std::function<double(double)>>(std::move(fn)) : nullptr),
      label_(std::move(label)) {}

Weight Weight::unit() { return Weight(WeightFamily::unit, 0.0, nullptr, "unit"); }

Weight Weight::power(double gamma) {
  require(std::isfinite(gamma), "power weight exponent must be finite");
  std::ostringstream label;
  label << "power(" << gamma << ")";
  return Weight(WeightFamily::power, gamma, nullptr, label.str());
}

Weight Weight::custom(std::function<double(double)> fn, std::string label) {
  require(static_cast<bool>(fn), "custom weight needs an evaluator");
  return Weight(WeightFamily::custom, std::numeric_limits<double>::quiet_NaN(), std::move(fn),
                std::move(label));
}

double Weight::operator()(double x) const {
  switch (family_) {
    case WeightFamily::unit: return 1.0;
    case WeightFamily::power: return std::pow(x, gamma_);
    case WeightFamily::custom: return (*fn_)(x);
  }
  return 0.0;
}

std::optional<double> Weight::closed_power_integral(double r, double s, double t) const {
  if (!has_closed_form()) return std::nullopt;
  require(s >= 0.0 && t > s, "closed_power_integral: need 0 <= s < t");
  const PowerMass mass(gamma_ * r);
  const double value = mass.between(s, t);
  if (std::isinf(value)) {
    const bool lower_bad = s == 0.0 && std::isinf(mass.between(0.0, std::min(t, 1.0)));
    throw DivergentIntegral(lower_bad ? Side::lower : Side::upper,
                            "divergent-integral: ∫ " + label_ + "^r diverges at the " +
                                (lower_bad ? std::string("lower") : std::string("upper")) +
                                " endpoint");
  }
  return value;
}

WeightPair::WeightPair(Weight v0_, Weight v1_, double p)
    : v0(std::move(v0_)), v1(std::move(v1_)), exponents(ExponentPair::from_p(p)) {
  for (int i = 0; i <= 120; ++i) {
    const double x = std::pow(10.0, -6.0 + 0.1 * i);
    for (const Weight* w : {&v0, &v1}) {
      const double value = (*w)(x);
      require(std::isfinite(value) && value >= 0.0,
              "weight " + w->label() + " must be finite and nonnegative on (0, inf)");
    }
  }
}

double integrate_power(const Weight& w, double r, double s, double t, const QuadratureSpec& quad) {
  require(s >= 0.0 && t > s, "integrate_power: need 0 <= s < t");
  if (auto closed = w.closed_power_integral(r, s, t)) return *closed;

  auto rho = [&w, r](double x) { return std::pow(w(x), r); };
  double total = 0.0;
  double lo = s;
  double hi = t;
  if (s == 0.0) {
    lo = std::isinf(t) ? 1.0 : t;
    const EndpointProbe probe = probe_density(rho, lo, Side::lower, quad);
    if (probe.status == Divergence::diverges) {
      throw DivergentIntegral(Side::lower, "divergent-integral at the lower endpoint 0");
    }
    if (probe.status == Divergence::undetermined) {
      fail(ErrorKind::integration_failed, "integrate_power: lower tail undetermined");
    }
    total += probe.partial;
  }
  if (std::isinf(t)) {
    hi = std::max(lo, 1.0);
    const EndpointProbe probe = probe_density(rho, hi, Side::upper, quad);
    if (probe.status == Divergence::diverges) {
      throw DivergentIntegral(Side::upper, "divergent-integral at the upper endpoint inf");
    }
    if (probe.status == Divergence::undetermined) {
      fail(ErrorKind::integration_failed, "integrate_power: upper tail undetermined");
    }
    total += probe.partial;
  }
  if (hi > lo) {
    const QuadResult body = integrate(rho, lo, hi, quad);
    if (!body.converged || !std::isfinite(body.value)) {
      throw DivergentIntegral(Side::upper, "divergent-integral: refinement did not converge");
    }
    total += body.value;
  }
  return total;
}

const char* to_string(Divergence d) {
  switch (d) {
    case Divergence::converges: return "converges";
    case Divergence::diverges: return "diverges";
    case Divergence::undetermined: return "undetermined";
  }
  return "unknown";
}

EndpointProbe probe_endpoint(const Weight& w, double r, double anchor, Side side,
                             const QuadratureSpec& quad) {
  require(anchor > 0.0 && std::isfinite(anchor), "probe anchor must be in (0, inf)");
  if (w.has_closed_form()) {
    const double s = side == Side::lower ? 0.0 : anchor;
    const double t = side == Side::lower ? anchor : kInf;
    try {
      return {Divergence::converges, *w.closed_power_integral(r, s, t), 0};
    } catch (const DivergentIntegral&) {
      return {Divergence::diverges, kInf, 0};
    }
  }
  return probe_density([&w, r](double x) { return std::pow(w(x), r); }, anchor, side, quad);
}

namespace {

Divergence product_status(const EndpointProbe& a, const EndpointProbe& b) {
  auto is_zero = [](const EndpointProbe& e) {
    return e.status == Divergence::converges && e.partial == 0.0;
  };
  if ((a.status == Divergence::diverges && !is_zero(b)) ||
      (b.status == Divergence::diverges && !is_zero(a))) {
    return Divergence::diverges;
  }
  if (a.status == Divergence::undetermined || b.status == Divergence::undetermined) {
    return Divergence::undetermined;
  }
  return Divergence::converges;
}

}  // namespace

S6Report check_S6(const WeightPair& pair, double c, const QuadratureSpec& quad) {
  require(c > 0.0 && std::isfinite(c), "check_S6: c must lie in (0, inf)");
  const double p = pair.p();
  const double pc = pair.p_conj();
  S6Report report;
  report.c = c;
  report.left_v1 = probe_endpoint(pair.v1, -pc, c, Side::lower, quad);
  report.left_v0 = probe_endpoint(pair.v0, p, c, Side::lower, quad);
  report.right_v1 = probe_endpoint(pair.v1, -pc, c, Side::upper, quad);
  report.right_v0 = probe_endpoint(pair.v0, p, c, Side::upper, quad);
  report.left = product_status(report.left_v1, report.left_v0);
  report.right = product_status(report.right_v1, report.right_v0);
  return report;
}

std::string S6Report::describe() const {
  std::ostringstream out;
  auto factor = [&out](const char* name, const EndpointProbe& e) {
    out << name << '=';
    if (e.status == Divergence::converges) {
      out << e.partial;
    } else {
      out << to_string(e.status);
    }
  };
  out << "c=" << c << " (0,c): " << to_string(left) << " [";
  factor("int v1^-p'", left_v1);
  out << ", ";
  factor("int v0^p", left_v0);
  out << "]; (c,inf): " << to_string(right) << " [";
  factor("int v1^-p'", right_v1);
  out << ", ";
  factor("int v0^p", right_v0);
  out << ']';
  return out.str();
}

bool spot_check_local_integrability(const WeightPair& pair, const QuadratureSpec& quad) {
  for (int e = -3; e <= 3; ++e) {
    const double x = std::pow(10.0, e);
    try {
      const double v = integrate_power(pair.v1, -pair.p_conj(), x, 2.0 * x, quad);
      if (!std::isfinite(v)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

std::shared_ptr<const Mass> make_mass(const Weight& w, double r, const QuadratureSpec& quad) {
  if (w.has_closed_form()) return std::make_shared<PowerMass>(w.gamma() * r);
  return std::make_shared<NumericMass>([w, r](double x) { return std::pow(w(x), r); }, quad);
}

}  // namespace assocnorm
