#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mollify/terms.hpp"

namespace mollify {

/// Parsed run configuration. The text format is a flat list of
/// "key = value" lines under [section] headers; '#' starts a comment.
/// Lists are comma separated and reals may be written as fractions (5/27).
///
///   [run]        command, preset, convention, strict, tol
///   [spec]       R, theta, nu
///   [P1] [P2]..  coeffs (monomial basis, constant term first)
///   [Q]          odd (coefficients of (1-2x)^1, ^3, ...), a0 (optional)
///   [surface]    nu, R_min, R_max, R_count
///   [optimize]   budget, restarts, seed, R_min, R_max, freeze, degrees,
///                q_odd_terms, objective_order
///   [arithmetic] N, max_ell, deligne_N, identity_tol, rankin_X
///   [output]     record, csv, trace
struct RunConfig {
  std::string command;
  std::string preset;
  Convention convention = Convention::section5;
  bool strict = true;
  double tol = 1e-10;

  std::optional<double> R;
  double theta = 0.0;
  std::vector<double> nu;
  std::vector<std::vector<double>> pieces;
  std::optional<double> q_a0;
  std::optional<std::vector<double>> q_odd;

  std::vector<double> surface_nu = {1.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 5, 1.0 / 6, 1.0 / 8, 5.0 / 54};
  double surface_R_min = 0.1;
  double surface_R_max = 10.0;
  int surface_R_count = 100;

  int budget = 500;
  int restarts = 3;
  std::uint64_t seed = 1;
  double opt_R_min = 0.1;
  double opt_R_max = 10.0;
  std::vector<std::string> freeze;
  std::vector<int> degrees;
  std::optional<int> q_odd_terms;
  int objective_order = 24;

  std::size_t arith_N = 10000;
  int max_ell = 3;
  std::size_t deligne_N = 100000;
  double identity_tol = 1e-8;
  std::size_t rankin_X = 0;

  std::string record_path;
  std::string csv_path;
  std::string trace_path;

  bool operator==(const RunConfig&) const = default;
};

/// Commands a config may name.
const std::vector<std::string>& config_commands();

/// Throws ConfigError with "source:line: message" on any malformed line,
/// unknown section or key, or duplicate key.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// The mollifier described by [spec], [P*] and [Q]. Throws ConfigError when a
/// required part is missing; admissibility is left to MollifierSpec::validate.
MollifierSpec to_spec(const RunConfig& config);

/// Config text describing spec (used to save optimized specs).
RunConfig config_from_spec(const MollifierSpec& spec);

}  // namespace mollify
