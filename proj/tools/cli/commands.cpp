#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <boost/algorithm/string.hpp>
#include <fmt/format.h>

#include "csv.hpp"

namespace assocnorm::cli {

namespace fs = std::filesystem;

namespace {

std::vector<double> numbers(const std::string& args, const std::string& spec) {
  std::vector<double> out;
  if (args.empty()) return out;
  std::vector<std::string> parts;
  boost::split(parts, args, boost::is_any_of(","));
  for (auto& part : parts) {
    boost::trim(part);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw ConfigError("bad number '" + part + "' in '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }

fs::path out_path(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.output_dir);
  return fs::path(c.output_dir) / name;
}

/// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::string out_dir;

  RunConfig load() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    apply_environment(c);
    if (!out_dir.empty()) c.output_dir = out_dir;
    c.validate();
    return c;
  }
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--config,-c", common.config_path, "Configuration file (INI sections)");
  sub->add_option("--out,-o", common.out_dir, "Output directory (overrides config and environment)");
}

std::vector<double> log_range(double lo, double hi, int n) {
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) {
    ts.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  }
  return ts;
}

int cmd_equilibrium(const RunConfig& c, const std::vector<double>& ts_in,
                    const std::vector<double>& range, std::ostream& out) {
  std::vector<double> ts = ts_in;
  if (range.size() == 3) {
    const auto more = log_range(range[0], range[1], static_cast<int>(range[2]));
    ts.insert(ts.end(), more.begin(), more.end());
  } else if (!range.empty()) {
    throw ConfigError("--range takes lo,hi,n");
  }
  if (ts.empty()) ts.push_back(1.0);
  const EquilibriumSolution sol = c.solve();
  CsvTable t({"t", "a", "b", "a_inv", "residual_eq2", "residual_eq3"});
  for (double x : ts) {
    if (!(x > 0.0)) throw ConfigError("t must be positive");
    const Window w = sol.window(x);
    const Residuals r = sol.residuals(x);
    t.add({x, w.a, w.b, sol.a_inv(x), r.eq2, r.eq3});
  }
  t.write(out_path(c, "equilibrium.csv").string());
  out << t.str();
  return 0;
}

int cmd_grid(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const EtaGrid grid = build_eta_grid(c.solve(), c.N);
  CsvTable t({"k", "eta"});
  for (int k = grid.lowest; k <= grid.highest; ++k) t.add({static_cast<long long>(k), grid[k]});
  t.write(out_path(c, "grid.csv").string());
  out << t.str();
  if (!grid.note.empty()) err << "note: " << grid.note << "\n";
  return 0;
}

std::vector<HalfLineFunction> functions_or(const std::vector<std::string>& specs,
                                           const RunConfig& c,
                                           std::vector<HalfLineFunction> fallback) {
  if (specs.empty()) return fallback;
  std::vector<HalfLineFunction> out;
  for (const auto& s : specs) out.push_back(parse_function(s, c));
  return out;
}

int cmd_norm(const RunConfig& c, const std::vector<std::string>& specs, const std::string& kind,
             std::ostream& out) {
  static const std::vector<std::string> kinds{"weak", "strong", "block", "sobolev"};
  std::vector<std::string> chosen;
  if (kind == "all") {
    chosen = kinds;
  } else if (std::find(kinds.begin(), kinds.end(), kind) != kinds.end()) {
    chosen = {kind};
  } else {
    throw ConfigError("unknown norm kind '" + kind + "'");
  }
  const EquilibriumSolution sol = c.solve();
  std::optional<EtaGrid> grid;
  const auto gs = functions_or(specs, c, g_corpus(c.corpus));
  CsvTable t({"label", "norm_kind", "value", "est_error", "component_G_frak", "component_G_cal",
              "t_min", "t_max"});
  for (const auto& g : gs) {
    for (const auto& k : chosen) {
      NormReport r;
      if (k == "weak") {
        r = weak_norm(g, sol, c.quad);
      } else if (k == "strong") {
        r = strong_norm(g, sol, c.quad);
      } else if (k == "block") {
        if (!grid) grid = build_eta_grid(sol, c.N);
        r = block_norm(g, sol, *grid, c.quad);
      } else {
        r = sobolev_norm(g, c.pair(), c.quad);
      }
      Cell frak = std::string{}, cal = std::string{};
      if (k == "weak") {
        frak = r.component("G_frak");
        cal = r.component("G_cal");
      }
      t.add({g.label(), k, r.value, r.est_error, frak, cal, r.truncation_used.lo,
             r.truncation_used.hi});
    }
  }
  t.write(out_path(c, "norms.csv").string());
  out << t.str();
  return 0;
}

int cmd_associate(const RunConfig& c, const std::vector<std::string>& specs, std::ostream& out) {
  const EquilibriumSolution sol = c.solve();
  const EtaGrid grid = build_eta_grid(sol, c.N);
  ReflexivityOptions opt;
  opt.g_spec = c.corpus;
  const auto shared = shared_family(sol, grid, opt, c.quad);
  const auto fs_ = functions_or(specs, c, hat_corpus(c.corpus));
  const ReflexivityResult r = verify_reflexivity(fs_, sol, shared, c.quad, opt);
  CsvTable t({"f_label", "sobolev", "J_lower", "holder_upper", "lower_constant", "family_size",
              "best_member"});
  for (const auto& rep : r.reports) {
    const std::string best = rep.labels.empty() ? "" : rep.labels[rep.best];
    t.add({rep.f_label, rep.sobolev_value, rep.J_lower, rep.holder_upper, rep.lower_constant(),
           static_cast<long long>(rep.family_size), best});
  }
  t.write(out_path(c, "associate.csv").string());
  out << t.str();
  out << fmt::format("c_emp={} C_emp={} sandwich_ratio={}\n", g17(r.c_emp), g17(r.C_emp),
                     g17(r.sandwich_ratio()));
  return 0;
}

struct ConstructArgs {
  std::string kind = "oscillator";
  double c = 1.0, d = 2.0, eps = 0.1;
  std::string mode = "normalized";
  std::string h;
  std::size_t n = 0;
  std::size_t K = 10;
  std::string targets = "geometric";
  std::string g = "indicator:1,2";
  int delta = 0, i = 1, N = 3;
  int samples = 2000;
};

int cmd_construct(const RunConfig& cfg, const ConstructArgs& a, std::ostream& out) {
  const EquilibriumSolution sol = cfg.solve();
  CsvTable series({"x", "y", "series"});
  auto sample = [&](const HalfLineFunction& f, double lo, double hi, const std::string& name) {
    for (int j = 0; j <= a.samples; ++j) {
      const double x = lo + (hi - lo) * j / a.samples;
      series.add({x, f(x), name});
    }
  };
  if (a.kind == "oscillator") {
    OscillatorOptions oo;
    if (a.mode == "raw") {
      oo.mode = DensityMode::raw;
    } else if (a.mode != "normalized") {
      throw ConfigError("--mode is raw or normalized");
    }
    oo.n_override = a.n;
    const HalfLineFunction h =
        a.h.empty() ? fn::constant_on(a.c, a.d, 1.0) : parse_function(a.h, cfg);
    const Oscillator osc = oscillator(h, a.c, a.d, a.eps, sol, oo, cfg.quad);
    sample(osc.g, a.c, a.d, "g");
    const double weak = weak_norm(osc.g, sol, cfg.quad).value;
    out << fmt::format("n={} n_required={} mu_total={} kernel_factor={} weak={} imbalance={}\n",
                       osc.plan.n, osc.plan.n_required, g17(osc.plan.mu_total),
                       g17(osc.plan.kernel_factor), g17(weak),
                       g17(oscillator_block_imbalance(osc, sol, cfg.quad)));
  } else if (a.kind == "witness") {
    WitnessOptions wo;
    wo.quad = cfg.quad;
    if (a.targets == "inverse_square") {
      wo.targets = TargetSequence::inverse_square;
    } else if (a.targets != "geometric") {
      throw ConfigError("--targets is geometric or inverse_square");
    }
    std::vector<Interval> segments;
    for (std::size_t k = 0; k < a.K; ++k) segments.push_back({1.0 + k, 1.5 + k});
    const HalfLineFunction f = parse_function("one", cfg);
    const Witness w = witness_unbounded(f, segments, sol, a.K, wo);
    for (std::size_t k = 0; k < w.terms.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      series.add({kk, w.partial_pairings[k], "partial_pairing"});
      series.add({kk, w.partial_lower_pairings[k], "harmonic"});
      series.add({kk, w.terms[k].weak, "term_weak"});
      series.add({kk, w.terms[k].target, "term_target"});
    }
    out << fmt::format("K={} partial_pairing={} weak_total={}\n", a.K,
                       g17(w.partial_pairings.back()), g17(w.weak_total));
  } else if (a.kind == "extremal") {
    const EtaGrid grid = build_eta_grid(sol, a.N + 1);
    const HalfLineFunction g = parse_function(a.g, cfg);
    const HalfLineFunction F = extremal_F(g, sol, grid, a.delta, a.i, a.N, cfg.quad);
    const Interval s = F.support_or(cfg.quad.truncation);
    sample(F, s.lo, s.hi, "F");
    out << fmt::format("pairing={} block_sum={}\n", g17(pairing(g, F, cfg.quad).value),
                       g17(extremal_block_sum(g, sol, grid, a.delta, a.i, a.N, cfg.quad)));
  } else if (a.kind == "density") {
    const EtaGrid grid = build_eta_grid(sol, cfg.N);
    const HalfLineFunction g = parse_function(a.g == "indicator:1,2" ? "lognormal" : a.g, cfg);
    std::vector<int> Ns;
    for (int N = 1; N <= std::min(grid.highest, -grid.lowest); ++N) Ns.push_back(N);
    const auto tail = truncation_tail(g, sol, grid, Ns, cfg.quad);
    for (std::size_t j = 0; j < Ns.size(); ++j) {
      series.add({static_cast<double>(Ns[j]), tail[j], "weak_tail"});
    }
    out << fmt::format("weak(g - g_N) at N={}: {}\n", Ns.back(), g17(tail.back()));
  } else {
    throw ConfigError("unknown construct kind '" + a.kind + "'");
  }
  series.write(out_path(cfg, "construct_" + a.kind + ".csv").string());
  return 0;
}

int cmd_verify(const RunConfig& c, const std::vector<std::string>& suites_in, std::ostream& out) {
  const std::vector<std::string> suites = suites_in.empty() ? c.suites : suites_in;
  for (const auto& s : suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  SuiteContext ctx{c.solve(), c.N, c.corpus, c.quad};
  CsvTable t({"suite", "check", "metric", "threshold", "passed", "detail"});
  bool ok = true;
  for (const auto& s : suites) {
    std::vector<CheckRow> rows;
    try {
      rows = run_suite(s, ctx);
    } catch (const Error& e) {
      rows.push_back({s, "error", 0.0, 0.0, false, std::string(to_string(e.kind())) + ": " + e.what()});
    }
    for (const auto& r : rows) {
      ok = ok && r.passed;
      t.add({r.suite, r.check, r.metric, r.threshold, static_cast<long long>(r.passed), r.detail});
      out << fmt::format("{:<5} {:<17} {:<22} {:>14.6g} (threshold {:.6g})\n", r.passed ? "PASS" : "FAIL",
                         r.suite, r.check, r.metric, r.threshold);
    }
  }
  t.write(out_path(c, "verify.csv").string());
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? 0 : 1;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
  const fs::path dir(c.output_dir);
  std::string text = "assocnorm report\n\n";
  bool any = false;
  bool failed = false;
  if (fs::exists(dir / "verify.csv")) {
    any = true;
    const auto rows = read_csv((dir / "verify.csv").string());
    std::map<std::string, std::pair<int, int>> tally;
    text += "empirical constants\n";
    text += fmt::format("  {:<17} {:<22} {:>24} {:>12}\n", "suite", "check", "metric", "threshold");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (r.size() < 6) continue;
      const bool pass = r[4] == "1";
      failed = failed || !pass;
      auto& [p, n] = tally[r[0]];
      p += pass ? 1 : 0;
      ++n;
      text += fmt::format("  {:<17} {:<22} {:>24} {:>12.6g}{}\n", r[0], r[1], r[2],
                          std::stod(r[3]), pass ? "" : "  FAIL");
    }
    text += "\nsuites\n";
    for (const auto& [s, pn] : tally) {
      text += fmt::format("  {:<17} {}/{} passed\n", s, pn.first, pn.second);
    }
    text += "\n";
  }
  if (fs::exists(dir / "associate.csv")) {
    any = true;
    const auto rows = read_csv((dir / "associate.csv").string());
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() < 5) continue;
      const double v = std::stod(rows[i][4]);
      if (v > 0.0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    text += fmt::format("associate: {} functions, J_lower/||f|| in [{}, {}]\n\n", rows.size() - 1,
                        g17(lo), g17(hi));
  }
  if (fs::exists(dir / "norms.csv")) {
    any = true;
    const auto rows = read_csv((dir / "norms.csv").string());
    text += fmt::format("norms: {} rows\n", rows.size() - 1);
  }
  if (!any) {
    out << "no CSV files found in '" << c.output_dir << "'\n";
    return 1;
  }
  {
    std::ofstream f(out_path(c, "report.txt"), std::ios::binary);
    f << text;
  }
  out << text;
  return failed ? 1 : 0;
}

}  // namespace

HalfLineFunction parse_function(const std::string& spec, const RunConfig& config) {
  const auto colon = spec.find(':');
  const std::string kind = boost::trim_copy(spec.substr(0, colon));
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto want = [&](std::size_t lo, std::size_t hi) {
    const auto v = numbers(args, spec);
    if (v.size() < lo || v.size() > hi) {
      throw ConfigError("'" + kind + "' takes " + std::to_string(lo) + ".." + std::to_string(hi) +
                        " numbers: '" + spec + "'");
    }
    return v;
  };
  try {
    if (kind == "indicator" || kind == "const") {
      const auto v = want(2, 3);
      return fn::indicator(v[0], v[1], v.size() > 2 ? v[2] : 1.0);
    }
    if (kind == "hat") {
      const auto v = want(3, 4);
      return fn::hat(v[0], v[1], v[2], v.size() > 3 ? v[3] : 1.0);
    }
    if (kind == "bump") {
      const auto v = want(2, 3);
      return fn::quartic_bump(v[0], v[1], v.size() > 2 ? v[2] : 1.0);
    }
    if (kind == "plateau") {
      const auto v = want(3, 4);
      return fn::plateau(v[0], v[1], v[2], v.size() > 3 ? v[3] : 1.0);
    }
    if (kind == "lognormal") {
      const auto v = want(0, 1);
      const double s = v.empty() ? 1.0 : v[0];
      return fn::from_callable(
          [s](double x) {
            const double l = std::log(x) / s;
            return std::exp(-l * l);
          },
          "lognormal(" + g17(s) + ")");
    }
    if (kind == "one") {
      want(0, 0);
      return fn::from_callable([](double) { return 1.0; }, "one", [](double) { return 0.0; });
    }
    if (kind == "gcorpus" || kind == "hatcorpus") {
      const auto v = want(1, 1);
      const auto all = kind == "gcorpus" ? g_corpus(config.corpus) : hat_corpus(config.corpus);
      const auto i = static_cast<long long>(v[0]);
      if (v[0] != static_cast<double>(i) || i < 0 || static_cast<std::size_t>(i) >= all.size()) {
        throw ConfigError("corpus index out of range: '" + spec + "'");
      }
      return all[static_cast<std::size_t>(i)];
    }
  } catch (const Error& e) {
    throw ConfigError("bad function '" + spec + "': " + e.what());
  }
  throw ConfigError("unknown function kind '" + kind + "'");
}

int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Associate norms of weighted Sobolev spaces on the half-line"};
  app.name("assocnorm");
  app.require_subcommand(1);

  Common common;
  std::vector<double> ts, range;
  std::vector<std::string> specs, suites;
  std::string kind = "all";
  ConstructArgs cargs;

  auto* eq = app.add_subcommand("equilibrium", "Solve the boundary pair a(t), b(t)");
  add_common(eq, common);
  eq->add_option("--t", ts, "Points t > 0 (repeatable)");
  eq->add_option("--range", range, "Log-spaced lo,hi,n")->delimiter(',')->expected(3);

  auto* gr = app.add_subcommand("grid", "Build the grid eta_k for |k| <= N");
  add_common(gr, common);

  auto* nm = app.add_subcommand("norm", "Evaluate weak, strong, block or Sobolev norms");
  add_common(nm, common);
  nm->add_option("--g", specs, "Function spec (repeatable; default: g-corpus)");
  nm->add_option("--kind", kind, "weak|strong|block|sobolev|all");

  auto* as = app.add_subcommand("associate", "Lower bounds J(f) with the Hoelder upper bound");
  add_common(as, common);
  as->add_option("--f", specs, "Function spec (repeatable; default: hat corpus)");

  auto* co = app.add_subcommand("construct", "Oscillators, witnesses, extremal F, density tails");
  add_common(co, common);
  co->add_option("--kind", cargs.kind, "oscillator|witness|extremal|density");
  co->add_option("--lo", cargs.c, "Left end c of the oscillator segment");
  co->add_option("--hi", cargs.d, "Right end d");
  co->add_option("--eps", cargs.eps, "Target weak norm epsilon");
  co->add_option("--mode", cargs.mode, "raw|normalized");
  co->add_option("--amplitude", cargs.h, "Amplitude function spec (default 1 on [c, d])");
  co->add_option("--n", cargs.n, "Fixed block count");
  co->add_option("--K", cargs.K, "Witness terms");
  co->add_option("--targets", cargs.targets, "geometric|inverse_square");
  co->add_option("--g", cargs.g, "Function spec for extremal/density");
  co->add_option("--delta", cargs.delta, "Kernel index delta (0 or 1)");
  co->add_option("--i", cargs.i, "Piece index i (1 or 2)");
  co->add_option("--N", cargs.N, "Cells |k| <= N for extremal F");
  co->add_option("--samples", cargs.samples, "Output sample points");

  auto* ve = app.add_subcommand("verify", "Run verification suites");
  add_common(ve, common);
  ve->add_option("--suite", suites, "Suite name (repeatable; default from config)");

  auto* re = app.add_subcommand("report", "Summarize CSVs in the output directory");
  add_common(re, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const RunConfig c = common.load();
    if (eq->parsed()) return cmd_equilibrium(c, ts, range, out);
    if (gr->parsed()) return cmd_grid(c, out, err);
    if (nm->parsed()) return cmd_norm(c, specs, kind, out);
    if (as->parsed()) return cmd_associate(c, specs, out);
    if (co->parsed()) return cmd_construct(c, cargs, out);
    if (ve->parsed()) return cmd_verify(c, suites, out);
    if (re->parsed()) return cmd_report(c, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::invalid_argument ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace assocnorm::cli
