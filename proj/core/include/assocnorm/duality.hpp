#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assocnorm/constructions.hpp"

namespace assocnorm {

/// C in |∫fg| <= C‖f‖_W·weak(g). Measured maxima are near 0.41 for p in {1.5, 2, 3}.
inline constexpr double kHolderConstant = 1.0;
/// weak(g̃) <= C·ε for oscillators (observed ratios 0.55 .. 0.65).
inline constexpr double kOscillatorConstant = 1.0;
/// Ceiling for the empirical sandwich ratio C_emp/c_emp.
inline constexpr double kSandwichCeiling = 100.0;

/// ∫ f g over the overlap of the supports.
QuadResult pairing(const HalfLineFunction& f, const HalfLineFunction& g,
                   const QuadratureSpec& quad = {});

/// A family member with its weak norm measured once.
struct FamilyMember {
  HalfLineFunction g;
  double weak = 0.0;
};

std::vector<FamilyMember> measure_family(const std::vector<HalfLineFunction>& family,
                                         const EquilibriumSolution& sol,
                                         const QuadratureSpec& quad = {});

struct SandwichReport {
  std::string f_label;
  double sobolev_value = 0.0;
  double J_lower = 0.0;       // max |⟨f, g⟩| / weak(g) over the family
  double holder_upper = 0.0;  // C_impl·‖f‖_W
  std::size_t family_size = 0;
  std::vector<double> ratios;  // per member, in family order
  std::vector<std::string> labels;
  std::size_t best = 0;

  /// J_lower / ‖f‖_W (0 for f = 0)
  double lower_constant() const;
};

SandwichReport estimate_J(const HalfLineFunction& f, const std::vector<FamilyMember>& family,
                          const EquilibriumSolution& sol, const QuadratureSpec& quad = {},
                          double C_impl = kHolderConstant);
SandwichReport estimate_J(const HalfLineFunction& f, const std::vector<HalfLineFunction>& family,
                          const EquilibriumSolution& sol, const QuadratureSpec& quad = {},
                          double C_impl = kHolderConstant);

/// weak(g) / ‖g/v0‖_{p'}, with 0/0 taken as 0.
double verify_embedding(const HalfLineFunction& g, const EquilibriumSolution& sol,
                        const QuadratureSpec& quad = {});

struct DivergenceRow {
  double epsilon = 0.0;
  std::size_t n = 0;
  double pairing = 0.0;      // ∫ |f g̃|
  double weak = 0.0;         // weak(g̃)
  double ratio = 0.0;        // pairing / weak
  double lower_bound = 0.0;  // ε^{-1} ∫_c^d |f| / C_impl
};

struct DivergenceTable {
  Interval segment;
  double f_mass = 0.0;  // ∫_c^d |f|
  std::vector<DivergenceRow> rows;
  /// Least-squares slope of log ratio against log ε (about −1).
  double slope = 0.0;
  /// Every ratio above its lower bound and strictly growing as ε shrinks.
  bool unbounded() const;
};

/// Oscillators with |g̃| = 1 on a segment where f is not a.e. zero. The segment
/// defaults to the support of f, or the first decade window with ∫|f| > 0.
DivergenceTable verify_strong_of_weak_zero(const HalfLineFunction& f,
                                           const std::vector<double>& eps_list,
                                           const EquilibriumSolution& sol,
                                           const QuadratureSpec& quad = {},
                                           std::optional<Interval> segment = std::nullopt,
                                           double C_impl = kOscillatorConstant);

struct HardyConstants {
  int k = 0;
  double A1 = 0.0, A2 = 0.0;
  double AA1_p = 0.0, AA2_p = 0.0;  // 𝔸1^p, 𝔸2^p
  double t_A1 = 0.0, t_A2 = 0.0, t_AA1 = 0.0, t_AA2 = 0.0;  // maximizers
};

/// Sups over η_{k−1} < t < η_k by a 512-point log scan refined with Brent.
HardyConstants hardy_constants(const EquilibriumSolution& sol, const EtaGrid& grid, int k,
                               const QuadratureSpec& quad = {});

struct WindowConstant {
  double t = 0.0;
  double A_a = 0.0;  // V1(t)^{1/p'} (∫_t^{a^{-1}(t)} v0^p)^{1/p}
  double A_b = 0.0;  // V1(t)^{1/p'} (∫_{b^{-1}(t)}^t v0^p)^{1/p}
};

WindowConstant window_constant(const EquilibriumSolution& sol, double t);

/// Family used for J_lower(f): v0^p|f|^{p−1}sgn f, derivatives of plateaus
/// following f', mixtures of the two, sign indicators, plus `shared`.
std::vector<HalfLineFunction> reflexivity_family(const HalfLineFunction& f,
                                                 const EquilibriumSolution& sol);

struct ReflexivityOptions {
  double C_impl = kHolderConstant;
  /// g's whose extremal F's join the family (tabulated on `tab_points`).
  CorpusSpec g_spec{};
  std::size_t extremal_from = 3;
  int extremal_N = 3;
  std::size_t tab_points = 256;
};

struct ReflexivityResult {
  std::vector<SandwichReport> reports;
  double c_emp = 0.0;  // min J_lower/‖f‖_W over f ≠ 0
  double C_emp = 0.0;  // max J_lower/‖f‖_W
  double sandwich_ratio() const { return c_emp > 0.0 ? C_emp / c_emp : 0.0; }
};

/// Shared members: tabulated extremal F's from the g-corpus and one oscillator.
std::vector<FamilyMember> shared_family(const EquilibriumSolution& sol, const EtaGrid& grid,
                                        const ReflexivityOptions& options,
                                        const QuadratureSpec& quad = {});

ReflexivityResult verify_reflexivity(const std::vector<HalfLineFunction>& corpus,
                                     const EquilibriumSolution& sol,
                                     const std::vector<FamilyMember>& shared,
                                     const QuadratureSpec& quad = {},
                                     const ReflexivityOptions& options = {});

/// weak(g − g_N) for each N, with g_N = g·χ[η_{−N}, η_N].
std::vector<double> truncation_tail(const HalfLineFunction& g, const EquilibriumSolution& sol,
                                    const EtaGrid& grid, const std::vector<int>& Ns,
                                    const QuadratureSpec& quad = {});

/// max over f, g of |⟨f, g⟩| / (‖f‖_W·weak(g)), skipping zero members.
double holder_ratio(const std::vector<HalfLineFunction>& fs, const std::vector<HalfLineFunction>& gs,
                    const EquilibriumSolution& sol, const QuadratureSpec& quad = {});

struct CheckRow {
  std::string suite;
  std::string check;
  double metric = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hoelder", "embedding", "reflexivity",
                                              "corol-divergence", "hardy", "identity", "blocks"};
  return names;
}

struct SuiteContext {
  EquilibriumSolution sol;
  int N = 4;
  CorpusSpec corpus{};
  QuadratureSpec quad{};
};

/// Runs one named suite; unknown names throw invalid_argument.
std::vector<CheckRow> run_suite(const std::string& name, const SuiteContext& ctx);

}  // namespace assocnorm
