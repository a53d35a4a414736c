#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "assocnorm/functionals.hpp"

namespace assocnorm {

/// raw: amplitude V1·|h| and μ = |h|; normalized: amplitude |h| and μ = |h|/V1.
enum class DensityMode { raw, normalized };
const char* to_string(DensityMode mode);

struct OscillatorPlan {
  std::size_t n = 1;
  std::vector<double> alphas;  // α_0 = c < ... < α_n = d
  std::vector<double> betas;   // β_i bisects the μ-mass of [α_i, α_{i+1}]
  DensityMode mode = DensityMode::normalized;
  double epsilon = 0.0;
  double mu_total = 0.0;      // ∫_c^d μ
  double kernel_factor = 0.0; // (∫_c^d w V1^{p'})^{1/p'}
  /// Smallest admissible n from ε, i.e. floor(kernel_factor·mu_total/ε) + 1.
  std::size_t n_required = 1;
};

struct OscillatorOptions {
  DensityMode mode = DensityMode::normalized;
  /// 0 picks the required minimum; otherwise used as is.
  std::size_t n_override = 0;
  std::size_t max_blocks = 1u << 16;
  double inversion_tol = 1e-12;
};

struct Oscillator {
  HalfLineFunction g;
  OscillatorPlan plan;
};

/// g̃ = amplitude·Σ_i (χ[α_i, β_i] − χ(β_i, α_{i+1})) on [c, d]; every block of
/// g̃/V1 has zero integral.
Oscillator oscillator(const HalfLineFunction& h, double c, double d, double epsilon,
                      const EquilibriumSolution& sol, const OscillatorOptions& options = {},
                      const QuadratureSpec& quad = {});

/// max_i |∫_{α_i}^{α_{i+1}} g̃/V1| / ∫_c^d μ, by independent quadrature.
double oscillator_block_imbalance(const Oscillator& osc, const EquilibriumSolution& sol,
                                  const QuadratureSpec& quad = {});

/// F^{(δ)}_{i,N}. The normalizing factor is 1/V1(x), which makes
/// ∫ g (F_{1,N} + F_{2,N}) equal the cell sum over |k| <= N exactly.
HalfLineFunction extremal_F(const HalfLineFunction& g, const EquilibriumSolution& sol,
                            const EtaGrid& grid, int delta, int i, int N,
                            const QuadratureSpec& quad = {});

/// Σ_{|k|<=N} ∫_{η_{k−1}}^{η_k} w |G^{(δ)}_{i,k}|^{p'}
double extremal_block_sum(const HalfLineFunction& g, const EquilibriumSolution& sol,
                          const EtaGrid& grid, int delta, int i, int N,
                          const QuadratureSpec& quad = {});

/// g_φ = φ'. φ needs a declared derivative and a compact support inside (0, ∞).
HalfLineFunction smooth_to_g(const HalfLineFunction& phi);

/// (∫ |φ|^{p'} v1^{−p'})^{1/p'}
double phi_norm(const HalfLineFunction& phi, const WeightPair& pair, const QuadratureSpec& quad);

enum class TargetSequence { geometric, inverse_square };

struct WitnessOptions {
  TargetSequence targets = TargetSequence::geometric;
  int samples_per_segment = 257;
  int max_doublings = 12;
  QuadratureSpec quad{};
};

struct WitnessTerm {
  std::size_t k = 0;  // 1-based
  Interval segment;
  double m = 0.0;      // min |f| on the segment
  double theta = 0.0;  // 1/(k m (b − a))
  double target = 0.0;
  double weak = 0.0;   // measured weak norm of g_k
  std::size_t n = 0;
  double lower_pairing = 0.0;  // θ m (b − a) = 1/k
  double pairing = 0.0;        // ∫ |f g_k|
};

struct Witness {
  HalfLineFunction g;
  std::vector<WitnessTerm> terms;
  std::vector<double> partial_pairings;        // Σ_{j<=k} ∫|f g_j|
  std::vector<double> partial_lower_pairings;  // Σ_{j<=k} 1/j
  double weak_total = 0.0;                     // weak norm of Σ g_k
};

double witness_target(TargetSequence seq, std::size_t k);

/// Builds g = Σ_{k<=k_max} g_k with |g_k| = θ_k on segment k and measured weak
/// norm below the k-th target (n doubles until it is).
Witness witness_unbounded(const HalfLineFunction& f, const std::vector<Interval>& segments,
                          const EquilibriumSolution& sol, std::size_t k_max,
                          const WitnessOptions& options = {});

struct CorpusSpec {
  std::uint64_t seed = 20240607;
  std::size_t size = 10;
  /// Supports are drawn inside [lo, hi].
  double lo = 0.5;
  double hi = 4.0;
};

/// Deterministic hats, trapezoids and bumps with f(0) = 0 and compact support.
std::vector<HalfLineFunction> hat_corpus(const CorpusSpec& spec = {});

/// Deterministic signed g's (indicators, hats, sign changes, bumps) supported in [lo, hi].
std::vector<HalfLineFunction> g_corpus(const CorpusSpec& spec = {});

}  // namespace assocnorm
