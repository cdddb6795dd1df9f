#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mollify/config.hpp"
#include "mollify/error.hpp"
#include "mollify/hecke.hpp"
#include "mollify/optimize.hpp"
#include "mollify/presets.hpp"
#include "mollify/record.hpp"

namespace py = pybind11;
using namespace mollify;

namespace {

ConvergenceOptions quad(double tol) {
  ConvergenceOptions o;
  o.tol = tol;
  return o;
}

py::dict terms_dict(const TermMatrix& tm) {
  py::dict d;
  std::vector<double> diag, super;
  for (const auto& t : tm.c_diag) diag.push_back(t.value);
  for (const auto& t : tm.c_super) super.push_back(t.value);
  d["c_diag"] = diag;
  d["c_super"] = super;
  d["c_total"] = tm.c_total;
  d["c_error"] = tm.c_error;
  d["kappa"] = tm.kappa;
  d["kappa_error"] = tm.kappa_error;
  return d;
}

MollifierSpec make_spec(const std::vector<std::vector<double>>& pieces,
                        const std::vector<double>& q_odd, double R,
                        const std::vector<double>& nu, double theta,
                        const std::string& convention, bool strict,
                        std::optional<double> q_a0) {
  RunConfig cfg;
  cfg.pieces = pieces;
  cfg.q_odd = q_odd;
  cfg.q_a0 = q_a0;
  cfg.R = R;
  cfg.nu = nu;
  cfg.theta = theta;
  cfg.convention = convention_from_string(convention);
  cfg.strict = strict;
  return to_spec(cfg);
}

py::object int128_to_py(Int128 v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

}  // namespace

PYBIND11_MODULE(_mollify, m) {
  m.doc() = "Main-term constants and kappa bounds for mollified second moments";
  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("c11_closed_form", &c11_closed_form, py::arg("R"), py::arg("nu"));
  m.def(
      "c11_reduced",
      [](const std::vector<double>& p, const std::vector<double>& q, double R, double nu,
         double tol) { return c11_reduced(Polynomial(p), Polynomial(q), R, nu, quad(tol)).value; },
      py::arg("p"), py::arg("q"), py::arg("R"), py::arg("nu"), py::arg("tol") = 1e-10,
      "c_11 for monomial-basis coefficient lists p and q.");
  m.def("kappa_bound", &kappa_bound, py::arg("c"), py::arg("R"));
  m.def("kappa_one_piece", &kappa_one_piece, py::arg("c"), py::arg("R"));
  m.def("nu1_bound", &nu1_bound, py::arg("theta"));
  m.def("nul_bound", &nul_bound, py::arg("theta"));

  m.def("preset_names", &preset_names);
  m.def(
      "reproduce",
      [](const std::string& name, double tol) {
        const Preset p = preset(name);
        py::dict d = terms_dict(combine(p.spec, quad(tol)));
        d["target"] = p.target_kappa;
        d["tolerance"] = p.tolerance;
        d["convention"] = to_string(p.spec.convention);
        return d;
      },
      py::arg("name"), py::arg("tol") = 1e-10);
  m.def(
      "evaluate",
      [](const std::vector<std::vector<double>>& pieces, const std::vector<double>& q_odd, double R,
         const std::vector<double>& nu, double theta, const std::string& convention, bool strict,
         std::optional<double> q_a0, double tol) {
        return terms_dict(
            combine(make_spec(pieces, q_odd, R, nu, theta, convention, strict, q_a0), quad(tol)));
      },
      py::arg("pieces"), py::arg("q_odd"), py::arg("R"), py::arg("nu"), py::arg("theta") = 0.0,
      py::arg("convention") = "section5", py::arg("strict") = true, py::arg("q_a0") = py::none(),
      py::arg("tol") = 1e-10,
      "Terms and kappa. pieces are monomial-basis coefficient lists; q_odd are the (1-2x) odd "
      "coefficients.");
  m.def(
      "kappa_surface",
      [](const std::vector<double>& R_grid, const std::vector<double>& nu_grid) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& p : kappa_surface(Polynomial({0.0, 1.0}), Polynomial({1.0, -1.0}), R_grid, nu_grid)) {
          out.emplace_back(p.R, p.nu, p.kappa);
        }
        return out;
      },
      py::arg("R_grid"), py::arg("nu_grid"), "One-piece surface for P(x) = x, Q(x) = 1 - x.");
  m.def(
      "optimize_preset",
      [](const std::string& name, int budget, std::uint64_t seed, std::vector<std::string> freeze) {
        const Preset p = preset(name);
        auto space = SearchSpace::from_spec(p.spec);
        for (const auto& f : freeze) space.freeze(f);
        OptimizationOptions opts;
        opts.budget = budget;
        opts.seed = seed;
        const auto res = optimize_kappa(space, p.spec, opts);
        py::dict d;
        d["kappa"] = res.kappa;
        d["start_kappa"] = res.start_kappa;
        d["evaluations"] = res.evaluations;
        d["trace"] = res.trace;
        d["R"] = res.best.R;
        return d;
      },
      py::arg("name"), py::arg("budget") = 50, py::arg("seed") = 1,
      py::arg("freeze") = std::vector<std::string>{});

  m.def(
      "tau",
      [](std::size_t N) {
        py::list out;
        for (Int128 v : delta_q_expansion(N)) out.append(int128_to_py(v));
        return out;
      },
      py::arg("N"), "tau(1) .. tau(N) as Python integers.");
  m.def(
      "lambda_series", [](std::size_t N) { return lambda_series(FormSpec::delta(), N).values(); },
      py::arg("N"));
  m.def(
      "dirichlet_convolve",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return dirichlet_convolve(CoefficientSeries(a), CoefficientSeries(b)).values();
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "dirichlet_inverse",
      [](const std::vector<double>& a) { return dirichlet_inverse(CoefficientSeries(a)).values(); },
      py::arg("a"));
  m.def(
      "verify_arithmetic",
      [](std::size_t N, int max_ell, double tol) {
        py::dict d;
        auto add = [&d](const VerificationReport& r) {
          for (const auto& c : r.checks) d[py::str(c.name)] = py::make_tuple(c.max_deviation, c.passed());
        };
        add(verify_hecke(FormSpec::delta(), N));
        add(verify_deligne(FormSpec::delta(), N));
        const auto lambda = lambda_series(FormSpec::delta(), N);
        for (int ell = 1; ell <= max_ell; ++ell) add(verify_unit_identities(lambda, ell, tol));
        return d;
      },
      py::arg("N") = 1000, py::arg("max_ell") = 3, py::arg("tol") = 1e-8,
      "Map from identity name to (max deviation, passed).");
}
