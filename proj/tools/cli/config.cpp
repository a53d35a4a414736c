#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace assocnorm::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"pair", {"p", "require_s6"}},
      {"v0", {"kind", "gamma", "beta"}},
      {"v1", {"kind", "gamma", "beta"}},
      {"quadrature", {"abs_tol", "rel_tol", "max_subdiv", "trunc_lo", "trunc_hi"}},
      {"grid", {"N"}},
      {"corpus", {"seed", "size"}},
      {"verify", {"suites"}},
      {"output", {"dir"}},
  };
  return keys;
}

template <class T>
T get(const pt::ptree& tree, const std::string& path, T fallback) {
  const auto node = tree.get_optional<std::string>(path);
  if (!node) return fallback;
  const std::string text = boost::trim_copy(*node);
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw std::invalid_argument(text);
    } else if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else if constexpr (std::is_integral_v<T>) {
      std::size_t used = 0;
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<T>(v);
    } else {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad value for " + path + ": '" + text + "'");
  }
}

WeightSpec read_weight(const pt::ptree& tree, const std::string& section) {
  WeightSpec w;
  w.kind = get<std::string>(tree, section + ".kind", "unit");
  w.gamma = get<double>(tree, section + ".gamma", 0.0);
  w.beta = get<double>(tree, section + ".beta", 0.0);
  return w;
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

Weight WeightSpec::build() const {
  if (kind == "unit") return Weight::unit();
  if (kind == "power") return Weight::power(gamma);
  if (kind == "exp_power") {
    const double g = gamma;
    const double b = beta;
    return Weight::custom([g, b](double x) { return std::pow(x, g) * std::exp(b * x); },
                          fmt::format("x^{}*exp({}x)", g17(g), g17(b)));
  }
  throw ConfigError("unknown weight kind '" + kind + "' (unit, power, exp_power)");
}

void RunConfig::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p must be finite and > 1");
  if (N < 1) throw ConfigError("grid N must be >= 1");
  if (!(quad.abs_tol > 0.0) || !(quad.rel_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (quad.max_subdiv < 1) throw ConfigError("max_subdiv must be positive");
  if (!(quad.truncation.lo > 0.0 && quad.truncation.hi > quad.truncation.lo)) {
    throw ConfigError("truncation window must satisfy 0 < trunc_lo < trunc_hi");
  }
  if (corpus.size < 1) throw ConfigError("corpus size must be >= 1");
  for (const auto& s : suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  v0.build();
  v1.build();
}

WeightPair RunConfig::pair() const { return WeightPair(v0.build(), v1.build(), p); }

EquilibriumSolution RunConfig::solve() const {
  EquilibriumOptions opt;
  opt.require_s6 = require_s6;
  opt.quad = quad;
  return EquilibriumSolution(pair(), opt);
}

RunConfig parse_config(const std::string& text) {
  // read_ini only knows whole-line comments; drop trailing "; ..." and "# ..."
  std::string cleaned;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == ';' || line[i] == '#') && std::isspace(static_cast<unsigned char>(line[i - 1]))) {
        line.erase(i);
        break;
      }
    }
    cleaned += line;
    cleaned += '\n';
  }
  pt::ptree tree;
  std::istringstream in(cleaned);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || body.empty()) {
      throw ConfigError("unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
  }
  RunConfig c;
  c.p = get<double>(tree, "pair.p", c.p);
  c.require_s6 = get<bool>(tree, "pair.require_s6", c.require_s6);
  c.v0 = read_weight(tree, "v0");
  c.v1 = read_weight(tree, "v1");
  c.quad.abs_tol = get<double>(tree, "quadrature.abs_tol", c.quad.abs_tol);
  c.quad.rel_tol = get<double>(tree, "quadrature.rel_tol", c.quad.rel_tol);
  c.quad.max_subdiv = get<std::size_t>(tree, "quadrature.max_subdiv", c.quad.max_subdiv);
  c.quad.truncation.lo = get<double>(tree, "quadrature.trunc_lo", c.quad.truncation.lo);
  c.quad.truncation.hi = get<double>(tree, "quadrature.trunc_hi", c.quad.truncation.hi);
  c.N = get<int>(tree, "grid.N", c.N);
  c.corpus.seed = get<std::uint64_t>(tree, "corpus.seed", c.corpus.seed);
  c.corpus.size = get<std::size_t>(tree, "corpus.size", c.corpus.size);
  if (const auto s = tree.get_optional<std::string>("verify.suites")) {
    c.suites.clear();
    std::vector<std::string> parts;
    boost::split(parts, *s, boost::is_any_of(","));
    for (auto& part : parts) {
      boost::trim(part);
      if (!part.empty()) c.suites.push_back(part);
    }
  }
  c.output_dir = get<std::string>(tree, "output.dir", c.output_dir);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string emit_config(const RunConfig& c) {
  std::string out;
  auto weight = [&](const char* name, const WeightSpec& w) {
    out += fmt::format("[{}]\nkind = {}\n", name, w.kind);
    if (w.kind != "unit") out += fmt::format("gamma = {}\n", g17(w.gamma));
    if (w.kind == "exp_power") out += fmt::format("beta = {}\n", g17(w.beta));
    out += "\n";
  };
  out += fmt::format("[pair]\np = {}\nrequire_s6 = {}\n\n", g17(c.p), c.require_s6 ? "true" : "false");
  weight("v0", c.v0);
  weight("v1", c.v1);
  out += fmt::format("[quadrature]\nabs_tol = {}\nrel_tol = {}\nmax_subdiv = {}\ntrunc_lo = {}\ntrunc_hi = {}\n\n",
                     g17(c.quad.abs_tol), g17(c.quad.rel_tol), c.quad.max_subdiv,
                     g17(c.quad.truncation.lo), g17(c.quad.truncation.hi));
  out += fmt::format("[grid]\nN = {}\n\n", c.N);
  out += fmt::format("[corpus]\nseed = {}\nsize = {}\n\n", c.corpus.seed, c.corpus.size);
  out += fmt::format("[verify]\nsuites = {}\n\n", boost::join(c.suites, ","));
  out += fmt::format("[output]\ndir = {}\n", c.output_dir);
  return out;
}

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv("ASSOCNORM_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
}

}  // namespace assocnorm::cli
