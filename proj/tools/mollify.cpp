// mollify: main-term constants and kappa bounds for mollified second moments.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mollify/config.hpp"
#include "mollify/error.hpp"
#include "mollify/hecke.hpp"
#include "mollify/optimize.hpp"
#include "mollify/presets.hpp"
#include "mollify/record.hpp"

using namespace mollify;

namespace {

constexpr int kExitMissed = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::optional<double> tol;
  bool no_strict = false;
  std::string convention;
  std::string out;
  std::optional<std::uint64_t> seed;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ConvergenceOptions quadrature(const Flags& f) {
  ConvergenceOptions o;
  o.tol = f.tol.value_or(1e-10);
  return o;
}

void apply_overrides(const Flags& f, MollifierSpec& spec) {
  if (f.no_strict) spec.strict = false;
  if (!f.convention.empty()) spec.convention = convention_from_string(f.convention);
}

RunConfig load_for(const std::string& command, const std::string& path, Flags& f) {
  RunConfig cfg = load_config(path);
  if (!cfg.command.empty() && cfg.command != command) {
    throw ConfigError(path + ":0: config is for '" + cfg.command + "', not '" + command + "'");
  }
  if (!f.tol) f.tol = cfg.tol;
  return cfg;
}

void print_terms(const TermMatrix& tm) {
  for (std::size_t i = 0; i < tm.c_diag.size(); ++i) {
    std::printf("  c_%zu,%zu   = %.12g  (err %.2g, order %d)\n", i + 1, i + 1, tm.c_diag[i].value,
                tm.c_diag[i].error_estimate, tm.c_diag[i].order);
  }
  for (std::size_t i = 0; i < tm.c_super.size(); ++i) {
    std::printf("  c_%zu,%zu   = %.12g  (err %.2g, order %d)\n", i + 1, i + 2, tm.c_super[i].value,
                tm.c_super[i].error_estimate, tm.c_super[i].order);
  }
  std::printf("  c       = %.12g\n  kappa   = %.10f  (err %.2g)\n", tm.c_total, tm.kappa,
              tm.kappa_error);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_reproduce(const std::string& name, const Flags& f) {
  Preset p = preset(name);
  apply_overrides(f, p.spec);
  Stopwatch clock;
  const auto opts = quadrature(f);
  const TermMatrix tm = combine(p.spec, opts);
  const double wall = clock.seconds();
  const double diff = tm.kappa - p.target_kappa;
  const bool met = std::abs(diff) <= p.tolerance;
  std::printf("%s: %s\n  convention %s\n", p.name.c_str(), p.description.c_str(),
              to_string(p.spec.convention).c_str());
  print_terms(tm);
  std::printf("  target  = %.10f  (|diff| %.3g, tolerance %.0e) %s\n  time    = %.2fs\n",
              p.target_kappa, std::abs(diff), p.tolerance, met ? "met" : "MISSED", wall);
  if (!f.out.empty()) {
    auto rec = evaluation_record("reproduce", p.spec, tm, opts, wall);
    rec["preset"] = p.name;
    rec["target"] = {{"kappa", p.target_kappa}, {"tolerance", p.tolerance}, {"met", met}};
    write_json(f.out, rec);
  }
  return met ? 0 : kExitMissed;
}

int cmd_eval(const std::string& path, Flags f) {
  const RunConfig cfg = load_for("eval", path, f);
  RunConfig relaxed = cfg;
  if (f.no_strict) relaxed.strict = false;
  MollifierSpec spec = to_spec(relaxed);
  apply_overrides(f, spec);
  if (const auto v = spec.violations(); !v.empty()) {
    std::fprintf(stderr, "inadmissible spec in %s:\n", path.c_str());
    for (const auto& s : v) std::fprintf(stderr, "  %s\n", s.c_str());
    return kExitMissed;
  }
  Stopwatch clock;
  const auto opts = quadrature(f);
  const TermMatrix tm = combine(spec, opts);
  const double wall = clock.seconds();
  std::printf("%s (convention %s)\n", path.c_str(), to_string(spec.convention).c_str());
  print_terms(tm);
  const std::string out = !f.out.empty() ? f.out : cfg.record_path;
  if (!out.empty()) write_json(out, evaluation_record("eval", spec, tm, opts, wall));
  return 0;
}

int cmd_optimize(const std::string& path, Flags f) {
  const RunConfig cfg = load_for("optimize", path, f);
  RunConfig relaxed = cfg;
  if (f.no_strict) relaxed.strict = false;
  MollifierSpec start = to_spec(relaxed);
  apply_overrides(f, start);

  std::vector<int> degrees = cfg.degrees;
  if (degrees.empty()) {
    degrees = SearchSpace::from_spec(start).degrees();
  }
  const int q_terms = cfg.q_odd_terms.value_or(static_cast<int>(start.q.odd_coeffs().size()));
  SearchSpace space(degrees, q_terms, cfg.opt_R_min, cfg.opt_R_max);
  for (const auto& name : cfg.freeze) space.freeze(name);

  OptimizationOptions opts;
  opts.budget = cfg.budget;
  opts.restarts = cfg.restarts;
  opts.seed = f.seed.value_or(cfg.seed);
  opts.objective_order = cfg.objective_order;
  opts.final_opts = quadrature(f);
  opts.progress = [](int eval, double best) {
    if (eval % 25 == 0) std::fprintf(stderr, "  eval %d  best kappa %.10f\n", eval, best);
  };
  Stopwatch clock;
  const auto res = optimize_kappa(space, start, opts);
  const double wall = clock.seconds();
  std::printf("optimized %zu of %zu coordinates in %d evaluations (%d failed), %.1fs\n",
              space.free_dimension(), space.dimension(), res.evaluations,
              res.failed_evaluations, wall);
  std::printf("  start kappa = %.10f\n  best kappa  = %.10f\n", res.start_kappa, res.kappa);
  print_terms(res.terms);

  const std::string out = !f.out.empty() ? f.out : cfg.record_path;
  if (!out.empty()) {
    auto rec = evaluation_record("optimize", res.best, res.terms, opts.final_opts, wall);
    rec["start_kappa"] = res.start_kappa;
    rec["evaluations"] = res.evaluations;
    rec["seed"] = opts.seed;
    write_json(out, rec);
    RunConfig best_cfg = config_from_spec(res.best);
    best_cfg.command = "eval";
    write_text(out + ".cfg", serialize_config(best_cfg));
  }
  const std::string trace = !cfg.trace_path.empty() ? cfg.trace_path
                            : !out.empty()          ? out + ".trace.csv"
                                                    : "";
  if (!trace.empty()) {
    std::ofstream t(trace);
    if (!t) throw std::runtime_error("cannot write " + trace);
    write_trace_csv(t, res.trace);
  }
  return res.kappa >= res.start_kappa ? 0 : kExitMissed;
}

int cmd_surface(const std::string& path, Flags f) {
  const RunConfig cfg = load_for("surface", path, f);
  const Polynomial p = cfg.pieces.empty() ? Polynomial({0.0, 1.0}) : Polynomial(cfg.pieces[0]);
  Polynomial q({1.0, -1.0});
  if (cfg.q_odd) {
    q = (cfg.q_a0 ? SmoothingPolynomial(*cfg.q_a0, *cfg.q_odd, false)
                  : SmoothingPolynomial::from_odd(*cfg.q_odd))
            .monomial();
  }
  if (cfg.surface_R_count < 1 || !(cfg.surface_R_min > 0.0) ||
      cfg.surface_R_max < cfg.surface_R_min) {
    throw ConfigError(path + ":0: [surface] needs R_count >= 1 and 0 < R_min <= R_max");
  }
  std::vector<double> Rs;
  const int n = cfg.surface_R_count;
  for (int i = 0; i < n; ++i) {
    Rs.push_back(n == 1 ? cfg.surface_R_min
                        : cfg.surface_R_min + (cfg.surface_R_max - cfg.surface_R_min) * i / (n - 1));
  }
  const auto pts = kappa_surface(p, q, Rs, cfg.surface_nu, quadrature(f));
  const std::string out = !f.out.empty() ? f.out : cfg.csv_path;
  if (out.empty()) {
    write_surface_csv(std::cout, pts);
  } else {
    std::ofstream o(out);
    if (!o) throw std::runtime_error("cannot write " + out);
    write_surface_csv(o, pts);
  }
  // Per-nu maximum and unimodality summary.
  FILE* info = out.empty() ? stderr : stdout;
  for (std::size_t j = 0; j < cfg.surface_nu.size(); ++j) {
    const auto* row = &pts[j * Rs.size()];
    std::size_t best = 0;
    int turns = 0;
    for (std::size_t i = 0; i < Rs.size(); ++i) {
      if (row[i].kappa > row[best].kappa) best = i;
      if (i >= 2 && (row[i - 1].kappa - row[i - 2].kappa) > 0 && (row[i].kappa - row[i - 1].kappa) < 0) ++turns;
    }
    std::fprintf(info, "  nu = %.6g: max kappa %.6f at R = %.4g (%s)\n", cfg.surface_nu[j],
                 row[best].kappa, row[best].R, turns <= 1 ? "unimodal" : "not unimodal");
  }
  return 0;
}

int cmd_verify(const std::string& path, Flags f) {
  const RunConfig cfg = load_for("verify-arithmetic", path, f);
  if (cfg.arith_N < 1 || cfg.max_ell < 1) throw ConfigError(path + ":0: need N >= 1 and max_ell >= 1");
  const FormSpec delta = FormSpec::delta();
  std::vector<VerificationReport> reports;
  reports.push_back(verify_hecke(delta, cfg.arith_N));
  reports.push_back(verify_deligne(delta, cfg.deligne_N));
  const auto lambda = lambda_series(delta, std::max(cfg.arith_N, cfg.rankin_X));
  const CoefficientSeries head(
      std::vector<double>(lambda.values().begin(), lambda.values().begin() + static_cast<long>(cfg.arith_N)));
  for (int ell = 1; ell <= cfg.max_ell; ++ell) {
    reports.push_back(verify_unit_identities(head, ell, cfg.identity_tol));
  }
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      std::printf("%s  %-48s max dev %.3g at n = %zu (tol %.0e)\n", c.passed() ? "pass" : "FAIL",
                  c.name.c_str(), c.max_deviation, c.worst_index, c.tolerance);
    }
    ok = ok && r.passed();
    all.push_back(report_to_json(r));
  }
  nlohmann::json rec = {{"tool", "mollify"}, {"version", kToolVersion},
                        {"command", "verify-arithmetic"}, {"N", cfg.arith_N},
                        {"reports", all}, {"passed", ok}};
  if (cfg.rankin_X >= 1000) {
    const auto est = rankin_constant(lambda, cfg.rankin_X);
    std::printf("Rankin mean of lambda^2:");
    for (const auto& [x, v] : est.estimates) std::printf("  X = %zu: %.6f", x, v);
    std::printf("  (spread %.3g)\n", est.spread());
    rec["rankin"] = est.estimates;
  }
  const std::string out = !f.out.empty() ? f.out : cfg.record_path;
  if (!out.empty()) write_json(out, rec);
  if (!cfg.csv_path.empty()) {
    std::ofstream o(cfg.csv_path);
    if (!o) throw std::runtime_error("cannot write " + cfg.csv_path);
    write_series_csv(o, head);
  }
  return ok ? 0 : kExitMissed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Main-term constants and kappa lower bounds for mollified second moments"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--tol", flags.tol, "Relative quadrature tolerance (default 1e-10)")->check(CLI::PositiveNumber);
  app.add_flag("--no-strict", flags.no_strict, "Do not enforce the admissible length ranges");
  app.add_option("--convention", flags.convention, "Evaluation convention")
      ->check(CLI::IsMember({"section5", "one-piece"}));
  app.add_option("--out", flags.out, "Result file (JSON record, or CSV for surface)");
  app.add_option("--seed", flags.seed, "Optimizer restart seed");

  std::string preset_name;
  std::string config_path;
  auto* reproduce = app.add_subcommand("reproduce", "Evaluate a published preset against its target");
  reproduce->add_option("preset", preset_name)->required()->check(CLI::IsMember(preset_names()));
  auto* eval = app.add_subcommand("eval", "Evaluate the spec in a config file");
  auto* optimize = app.add_subcommand("optimize", "Maximize kappa starting from a config file");
  auto* surface = app.add_subcommand("surface", "Export the one-piece kappa surface as CSV");
  auto* verify = app.add_subcommand("verify-arithmetic", "Check the coefficient identities");
  for (auto* sub : {eval, optimize, surface, verify}) {
    sub->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  }
  app.fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reproduce) return cmd_reproduce(preset_name, flags);
    if (*eval) return cmd_eval(config_path, flags);
    if (*optimize) return cmd_optimize(config_path, flags);
    if (*surface) return cmd_surface(config_path, flags);
    if (*verify) return cmd_verify(config_path, flags);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const SpecError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitMissed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMissed;
  }
  return kExitUsage;
}
