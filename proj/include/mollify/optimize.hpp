#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mollify/terms.hpp"

namespace mollify {

/// Unconstrained coordinates for a MollifierSpec: the free coefficients of
/// each P_l, the odd (1 - 2x) coefficients of Q, then R. nu and theta are
/// fixed by the base spec.
class SearchSpace {
 public:
  /// Degrees and Q size taken from the spec.
  static SearchSpace from_spec(const MollifierSpec& spec, double R_min = 0.1,
                               double R_max = 10.0);

  SearchSpace(std::vector<int> degrees, int q_odd_terms, double R_min, double R_max);

  std::size_t dimension() const { return names_.size(); }
  const std::vector<std::string>& coordinate_names() const { return names_; }
  /// Index of a coordinate name such as "P1.x2", "Q.c3" or "R".
  std::size_t index_of(const std::string& name) const;

  /// Freezes every coordinate whose name equals prefix or starts with
  /// prefix followed by '.'. Returns the number of coordinates frozen.
  std::size_t freeze(const std::string& prefix);
  bool is_frozen(std::size_t i) const { return frozen_[i]; }
  std::size_t free_dimension() const;

  double R_min() const { return R_min_; }
  double R_max() const { return R_max_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int q_odd_terms() const { return q_odd_terms_; }

  std::vector<double> encode(const MollifierSpec& spec) const;
  /// Builds a spec from coordinates; frozen coordinates are read from base.
  /// P_1(1) and Q(0) keep the values they have in base.
  MollifierSpec decode(const MollifierSpec& base, std::span<const double> x) const;

 private:
  std::vector<int> degrees_;
  int q_odd_terms_;
  double R_min_;
  double R_max_;
  std::vector<std::string> names_;
  std::vector<bool> frozen_;
};

struct OptimizationOptions {
  int budget = 500;  ///< objective evaluations, the start included
  int restarts = 3;
  std::uint64_t seed = 1;
  double simplex_scale = 0.01;  ///< initial step relative to |coordinate|
  double min_step = 1e-4;      ///< floor for the initial step
  double ftol = 1e-12;         ///< restart ends when the simplex kappa spread is below this
  int objective_order = 24;    ///< quadrature order during the search
  ConvergenceOptions final_opts;  ///< used to re-evaluate the start and the best point
  /// Called after every objective evaluation with (evaluation, best kappa).
  std::function<void(int, double)> progress;
};

struct OptimizationResult {
  MollifierSpec best;
  double kappa = 0.0;        ///< converged kappa of best
  double start_kappa = 0.0;  ///< converged kappa of the start spec
  TermMatrix terms;          ///< converged terms of best
  int evaluations = 0;
  int failed_evaluations = 0;
  /// (evaluation, best kappa so far) at the search quadrature order.
  std::vector<std::pair<int, double>> trace;
};

/// Nelder-Mead with restarts over the unfrozen coordinates. Candidates with
/// R outside [R_min, R_max] or whose evaluation throws are discarded. The
/// returned kappa is never below start_kappa.
OptimizationResult optimize_kappa(const SearchSpace& space, const MollifierSpec& start,
                                  const OptimizationOptions& opts = {});

enum class Difference { central, forward };

/// Finite-difference estimate of d kappa / d coordinate at spec.
/// Returns 0 for a frozen coordinate. Throws std::invalid_argument for h <= 0.
double local_sensitivity(const SearchSpace& space, const MollifierSpec& spec,
                         std::size_t coordinate, double h, const ConvergenceOptions& opts = {},
                         Difference scheme = Difference::central);

}  // namespace mollify
