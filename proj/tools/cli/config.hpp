#pragma once

#include <string>
#include <vector>

#include "assocnorm/assocnorm.hpp"

namespace assocnorm::cli {

struct WeightSpec {
  std::string kind = "unit";  // unit | power | exp_power
  double gamma = 0.0;
  double beta = 0.0;  // exp_power: x^gamma * exp(beta x)

  Weight build() const;
};

struct RunConfig {
  double p = 2.0;
  bool require_s6 = true;
  WeightSpec v0;
  WeightSpec v1;
  QuadratureSpec quad{};
  int N = 4;
  CorpusSpec corpus{};
  std::vector<std::string> suites = suite_names();
  std::string output_dir = ".";

  void validate() const;
  WeightPair pair() const;
  EquilibriumSolution solve() const;
};

/// Thrown for malformed or invalid configuration text (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical text; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& config);

/// ASSOCNORM_OUTPUT_DIR is the only environment override.
void apply_environment(RunConfig& config);

}  // namespace assocnorm::cli
