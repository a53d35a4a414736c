#pragma once

#include <memory>
#include <string>
#include <vector>

#include "assocnorm/weights.hpp"

namespace assocnorm {

struct EquilibriumOptions {
  double tol = 1e-12;
  /// Refuse pairs whose two-sided divergence check is not "satisfied". Unit weights need
  /// this switched off.
  bool require_s6 = true;
  double s6_anchor = 1.0;
  bool use_cache = true;
  int nodes_per_decade = 128;
  int max_nodes_per_decade = 2048;
  /// Relative tolerance for accepting an interpolated cache block.
  double cache_tol = 1e-11;
  QuadratureSpec quad{};
};

struct Window {
  double a = 0.0;
  double b = 0.0;
};

struct Residuals {
  double eq2 = 0.0;  // |∫_a^t w − ∫_t^b w|
  double eq3 = 0.0;  // |V1^{1/p'} V0^{1/p} − 1|
};

/// Boundary functions a(t), b(t) of the equilibrium system and their
/// inverses. Copies share the window cache.
class EquilibriumSolution {
 public:
  explicit EquilibriumSolution(WeightPair pair, EquilibriumOptions options = {});

  const WeightPair& pair() const;
  const EquilibriumOptions& options() const;
  const S6Report& s6() const;
  double tol() const { return options().tol; }
  double p() const { return pair().p(); }
  double p_conj() const { return pair().p_conj(); }

  /// Mass of w = v1^{-p'} and of u = v0^p.
  const Mass& w_mass() const;
  const Mass& u_mass() const;
  double w(double x) const { return w_mass().density(x); }

  Window window(double t) const;
  double a(double t) const;
  double b(double t) const;
  double a_inv(double t) const;
  double b_inv(double t) const;

  double V1(double t) const;
  double V1_minus(double t) const;
  double V1_plus(double t) const;
  double V0(double t) const;
  double V0_minus(double t) const;
  double V0_plus(double t) const;

  Residuals residuals(double t) const;

  /// Same solution with memoization switched off (fresh solves every call).
  EquilibriumSolution without_cache() const;
  std::size_t cached_blocks() const;

  struct State;

 private:
  explicit EquilibriumSolution(std::shared_ptr<const State> state);
  std::shared_ptr<const State> state_;
};

/// Direct solve of the window at t; no cache involved.
Window solve_window(const WeightPair& pair, double t, double tol = 1e-12);

struct EtaGrid {
  /// values[k - lowest] = η_k for k in [lowest, highest].
  int lowest = 0;
  int highest = 0;
  int requested = 0;
  std::vector<double> values;
  /// Set when the walk stopped before reaching ±requested.
  std::string note;

  double operator[](int k) const { return values.at(static_cast<std::size_t>(k - lowest)); }
  bool has(int k) const { return k >= lowest && k <= highest; }
  bool complete() const { return lowest == -requested && highest == requested; }
  /// Index k of the cell [η_{k−1}, η_k] containing t, or nullopt.
  std::optional<int> cell_of(double t) const;
};

EtaGrid build_eta_grid(const EquilibriumSolution& sol, int N);

/// |w(a(t)) a'(t) + w(b(t)) b'(t) − 2 w(t)| with central differences of step h.
/// h <= 0 picks max(1e-6 t, 1e-9).
double check_identity(const EquilibriumSolution& sol, double t, double h = 0.0);

}  // namespace assocnorm
