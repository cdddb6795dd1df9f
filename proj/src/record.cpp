#include "mollify/record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mollify {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json term_to_json(const TermValue& t) {
  return {{"value", t.value}, {"error", number_or_null(t.error_estimate)}, {"order", t.order}};
}

}  // namespace

json spec_to_json(const MollifierSpec& spec) {
  json pieces = json::array();
  for (const auto& p : spec.pieces) {
    const auto c = p.poly().coeffs();
    pieces.push_back(std::vector<double>(c.begin(), c.end()));
  }
  const auto odd = spec.q.odd_coeffs();
  return {{"R", spec.R},
          {"theta", spec.theta},
          {"nu", spec.nu},
          {"P", pieces},
          {"Q", {{"a0", spec.q.constant_term()}, {"odd", std::vector<double>(odd.begin(), odd.end())}}},
          {"strict", spec.strict},
          {"convention", to_string(spec.convention)}};
}

MollifierSpec spec_from_json(const json& j) {
  MollifierSpec spec;
  spec.R = j.at("R").get<double>();
  spec.theta = j.at("theta").get<double>();
  spec.nu = j.at("nu").get<std::vector<double>>();
  spec.strict = j.at("strict").get<bool>();
  spec.convention = convention_from_string(j.at("convention").get<std::string>());
  int ell = 1;
  for (const auto& p : j.at("P")) {
    spec.pieces.emplace_back(ell++, Polynomial(p.get<std::vector<double>>()), spec.strict);
  }
  spec.q = SmoothingPolynomial(j.at("Q").at("a0").get<double>(),
                               j.at("Q").at("odd").get<std::vector<double>>(), spec.strict);
  return spec;
}

json terms_to_json(const TermMatrix& terms) {
  json diag = json::array();
  for (const auto& t : terms.c_diag) diag.push_back(term_to_json(t));
  json super = json::array();
  for (const auto& t : terms.c_super) super.push_back(term_to_json(t));
  return {{"c_diag", diag},
          {"c_super", super},
          {"c_total", terms.c_total},
          {"c_error", number_or_null(terms.c_error)},
          {"kappa", terms.kappa},
          {"kappa_error", number_or_null(terms.kappa_error)}};
}

json quadrature_to_json(const ConvergenceOptions& opts) {
  return {{"tol", opts.tol},
          {"start_order", opts.start_order},
          {"max_order", opts.max_order},
          {"fixed_order", opts.fixed_order}};
}

json report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_deviation", number_or_null(c.max_deviation)},
                      {"worst_index", c.worst_index},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed()}});
  }
  return {{"checks", checks}, {"passed", report.passed()}};
}

json evaluation_record(const std::string& command, const MollifierSpec& spec,
                       const TermMatrix& terms, const ConvergenceOptions& opts,
                       double wall_seconds) {
  return {{"tool", "mollify"},
          {"version", kToolVersion},
          {"command", command},
          {"spec", spec_to_json(spec)},
          {"terms", terms_to_json(terms)},
          {"kappa", terms.kappa},
          {"quadrature", quadrature_to_json(opts)},
          {"wall_time_s", wall_seconds}};
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points) {
  out << "R,nu,kappa\n";
  for (const auto& p : points) out << fmt(p.R) << "," << fmt(p.nu) << "," << fmt(p.kappa) << "\n";
}

void write_trace_csv(std::ostream& out, const std::vector<std::pair<int, double>>& trace) {
  out << "iter,kappa\n";
  for (const auto& [i, k] : trace) out << i << "," << fmt(k) << "\n";
}

void write_series_csv(std::ostream& out, const CoefficientSeries& series) {
  out << "n,value\n";
  for (std::size_t n = 1; n <= series.cutoff(); ++n) out << n << "," << fmt(series[n]) << "\n";
}

}  // namespace mollify
