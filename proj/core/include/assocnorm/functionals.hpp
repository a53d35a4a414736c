#pragma once

#include <map>
#include <string>
#include <vector>

#include "assocnorm/equilibrium.hpp"
#include "assocnorm/function.hpp"

namespace assocnorm {

struct BlockEntry {
  int k = 0;
  int i = 1;      // 1: [t, η_k], 2: [η_k, a^{-1}(t)]
  int delta = 0;  // 0: 𝔾-type kernel, 1: 𝒢-type kernel
  double value = 0.0;  // ∫_{η_{k−1}}^{η_k} w |G^{(δ)}_{i,k}|^{p'}
};

struct NormReport {
  double value = 0.0;
  double est_error = 0.0;
  Interval truncation_used{};
  std::map<std::string, double> components;
  std::vector<std::string> warnings;
  std::vector<BlockEntry> blocks;

  double component(const std::string& name) const;
};

/// ‖v0 f‖_p + ‖v1 f'‖_p over the support (or truncation window). Without a
/// declared derivative, central differences are used and a warning is raised
/// unless `allow_numeric_derivative` is false.
NormReport sobolev_norm(const HalfLineFunction& f, const WeightPair& pair,
                        const QuadratureSpec& quad, bool allow_numeric_derivative = true);

/// 𝖦(g) = (∫ w(t) (∫_t^{a^{-1}(t)} |g|)^{p'} dt)^{1/p'}
NormReport strong_norm(const HalfLineFunction& g, const EquilibriumSolution& sol,
                       const QuadratureSpec& quad);

/// 𝔾(g) + 𝒢(g); components "G_frak" and "G_cal".
NormReport weak_norm(const HalfLineFunction& g, const EquilibriumSolution& sol,
                     const QuadratureSpec& quad);

/// Cell-wise form: value^{p'} = Σ_k Σ_i Σ_δ ∫ w |G^{(δ)}_{i,k}|^{p'}.
NormReport block_norm(const HalfLineFunction& g, const EquilibriumSolution& sol,
                      const EtaGrid& grid, const QuadratureSpec& quad);

/// Closed form for v0 = v1 ≡ 1 with windows [t, t + 1/2]; components "term1", "term2".
NormReport remark_unit_norm(const HalfLineFunction& v, double p, const QuadratureSpec& quad);
NormReport remark_unit_norm(const HalfLineFunction& v, const WeightPair& pair,
                            const QuadratureSpec& quad);

/// g·χ_[η_{−N}, η_N]
HalfLineFunction truncate(const HalfLineFunction& g, const EtaGrid& grid, int N);

/// (∫ |g|^{p'} v0^{−p'})^{1/p'}
double dual_lp_norm(const HalfLineFunction& g, const Weight& v0, double p_conj,
                    const QuadratureSpec& quad);

/// Kernel pieces at t for the cell-wise form, exposed for the extremal functions.
/// G^{(δ)} over x in [x_lo, x_hi] (δ = 0 uses ∫_{a(x)}^t w, δ = 1 the V1(t) factor).
class KernelEvaluator {
 public:
  /// With `with_v1` false only the |g| cumulative is built (no V1 needed).
  KernelEvaluator(const HalfLineFunction& g, const EquilibriumSolution& sol,
                  const QuadratureSpec& quad, bool with_v1 = true);

  /// ∫_{x_lo}^{x_hi} g(x)/V1(x)·(∫_{a(x)}^t w)^{1−δ} dx, times V1(t)^δ.
  double kernel(int delta, double t, double x_lo, double x_hi) const;
  double abs_mass(double x_lo, double x_hi) const;
  const Interval& support() const { return support_; }
  const std::vector<double>& breakpoints() const { return bps_; }
  /// Outer range (a(lo), hi) where windows [t, a^{-1}(t)] meet the support.
  Interval outer_range() const { return outer_; }
  bool converged() const { return cumulative_.converged(); }

 private:
  EquilibriumSolution sol_;
  Interval support_;
  Interval outer_;
  double anchor_;  // reference point for the cumulative of w
  bool with_v1_;
  std::vector<double> bps_;
  PanelCumulative<3> cumulative_;
};

}  // namespace assocnorm
