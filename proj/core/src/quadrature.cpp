#include "assocnorm/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace assocnorm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::divergent_integral: return "divergent-integral";
    case ErrorKind::integration_failed: return "integration-failed";
    case ErrorKind::window_unsolvable: return "window-unsolvable";
    case ErrorKind::derivative_required: return "derivative-required";
    case ErrorKind::block_budget_exceeded: return "block-budget-exceeded";
    case ErrorKind::no_witness_segment: return "no-witness-segment";
    case ErrorKind::segment_rejected: return "segment-rejected";
    case ErrorKind::domain: return "domain";
  }
  return "unknown";
}

void QuadratureSpec::validate() const {
  require(abs_tol > 0.0 && rel_tol > 0.0, "quadrature tolerances must be positive");
  require(max_subdiv >= 1, "max_subdiv must be at least 1");
  require(truncation.lo > 0.0 && std::isfinite(truncation.hi) && truncation.lo < truncation.hi,
          "truncation window must satisfy 0 < t_min < t_max < inf");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec out = *this;
  out.abs_tol /= factor;
  out.rel_tol /= factor;
  return out;
}

namespace detail {

const Gk15Rule& gk15_rule() {
  static const Gk15Rule rule = [] {
    Gk15Rule r{};
    const auto& x = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
    std::copy(x.begin(), x.end(), r.x.begin());
    std::copy(wk.begin(), wk.end(), r.wk.begin());
    std::copy(wg.begin(), wg.end(), r.wg.begin());
    return r;
  }();
  return rule;
}

}  // namespace detail
}  // namespace assocnorm
