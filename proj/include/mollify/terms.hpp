#pragma once

#include <string>
#include <vector>

#include "mollify/jet.hpp"
#include "mollify/polynomial.hpp"
#include "mollify/quadrature.hpp"

namespace mollify {

/// How (R, nu_l) enter the main-term formulas and how kappa is read off c.
///
/// section5: terms are evaluated at (2R, nu_l / 2) and kappa = 1 - log(c) / (2R).
/// one_piece: terms are evaluated at (R, nu_l) and kappa = 1 - log(c) / R.
enum class Convention { section5, one_piece };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

/// Full problem instance for an L-piece mollifier.
struct MollifierSpec {
  std::vector<MollifierPolynomial> pieces;  ///< P_1 .. P_L
  SmoothingPolynomial q = SmoothingPolynomial::from_odd({});
  double R = 1.0;
  std::vector<double> nu;  ///< length exponents nu_1 .. nu_L
  double theta = 0.0;      ///< eigenvalue-bound exponent
  bool strict = true;      ///< enforce the admissible nu ranges
  Convention convention = Convention::section5;

  int piece_count() const { return static_cast<int>(pieces.size()); }

  /// Human-readable descriptions of every violated condition.
  std::vector<std::string> violations() const;
  /// Throws SpecError listing violations().
  void validate() const;
};

/// Largest admissible nu_1 for a given theta: (1 - 2 theta) / (4 + 2 theta).
double nu1_bound(double theta);
/// Largest admissible nu_l, l >= 2: (1 - 2 theta) / (4 + 6 theta).
double nul_bound(double theta);

/// A computed main-term constant with its quadrature error estimate.
struct TermValue {
  double value = 0.0;
  double error_estimate = 0.0;
  int order = 0;
};

struct TermMatrix {
  std::vector<TermValue> c_diag;   ///< c_{l,l}, l = 1..L
  std::vector<TermValue> c_super;  ///< c_{l,l+1}, l = 1..L-1
  double c_total = 0.0;
  double c_error = 0.0;  ///< sum of entry error estimates, weighted as in c_total
  double kappa = 0.0;
  double kappa_error = 0.0;
};

// Frame-level terms. Every function below takes the frame parameters
// (R, theta_l) in which c_{1,1} has the form
//   1 + (1/theta) int int e^{2Rv} [d/dx e^{R theta x} Q(v + theta x) P(x + u)]^2 du dv.
// The general-l formulas are written with nu_l / 2 = theta_l; at l = 1 they
// reduce to the expression above.

/// c_{1,1} in reduced form; the inner derivative comes from an order-(1, 0) jet.
TermValue c11_reduced(const Polynomial& p1, const Polynomial& q, double R, double theta,
                      const ConvergenceOptions& opts = {});

/// Closed form of c_{1,1} for P(x) = x, Q(x) = 1 - x.
double c11_closed_form(double R, double theta);

/// c_{l,l} for l >= 2 (4-d integral over (t, r, u, v)); l = 1 dispatches to
/// c11_reduced. swap_axes evaluates with (x, u) and (y, v) exchanged.
TermValue c_ll(const Polynomial& p, int ell, const Polynomial& q, double R, double theta,
               const ConvergenceOptions& opts = {}, bool swap_axes = false);

/// c_{l,l+1} (simplex x [0, 1] integral over (a, b, u)).
TermValue c_l_lplus1(const Polynomial& p_l, const Polynomial& p_next, int ell,
                     const Polynomial& q, double R, double theta_l, double theta_next,
                     const ConvergenceOptions& opts = {});

/// Integrand of c_{l,l} (l >= 2) at (t, r, u, v), expanded in (x, y) around
/// (x0, y0) to orders (order, order). Excludes the constant prefactor.
Jet2 diagonal_integrand(const Polynomial& p_deriv, int ell, const Polynomial& q, double R,
                        double theta, double t, double r, double u, double v, double x0,
                        double y0, int order);

/// Integrand of c_{l,l+1} at (u, a, b), expanded around (x0, y0). p_l_deriv
/// and p_next_deriv are P_l^{(l(l-1))} and P_{l+1}^{(l(l+1))}. Excludes the
/// constant prefactor.
Jet2 cross_integrand(const Polynomial& p_l_deriv, const Polynomial& p_next_deriv, int ell,
                     const Polynomial& q, double R, double theta_l, double theta_next, double u,
                     double a, double b, double x0, double y0, int order);

/// Constant factors multiplying the x^l y^l coefficient of the integrated jets
/// (includes the l!^2 from coefficient-to-derivative conversion).
double diagonal_prefactor(int ell);
double cross_prefactor(int ell, double R, double theta_l, double theta_next);

// Spec-level evaluation under spec.convention.

/// Frame R and theta_l for the spec's convention.
double frame_R(const MollifierSpec& spec);
double frame_theta(const MollifierSpec& spec, int ell);

TermValue c_ll(const MollifierSpec& spec, int ell, const ConvergenceOptions& opts = {});
TermValue c_l_lplus1(const MollifierSpec& spec, int ell, const ConvergenceOptions& opts = {});

/// c_total = sum_l c_{l,l} + 2 sum_l c_{l,l+1}; pieces two or more apart
/// contribute nothing to the main term.
TermMatrix combine(const MollifierSpec& spec, const ConvergenceOptions& opts = {});

/// 1 - log(c_total) / (2R). Throws SpecError for c_total <= 0 or R <= 0.
double kappa_bound(double c_total, double R);
/// 1 - log(c_11) / R.
double kappa_one_piece(double c11, double R);

/// kappa under the spec's convention.
double kappa_for(const MollifierSpec& spec, double c_total);

struct SurfacePoint {
  double R;
  double nu;
  double kappa;
};

/// One-piece kappa-hat(R, nu) = 1 - log(c_{1,1}(P, Q, R, nu)) / R over a grid,
/// row-major in nu then R. Uses the closed form when P = x and Q = 1 - x.
std::vector<SurfacePoint> kappa_surface(const Polynomial& p, const Polynomial& q,
                                        const std::vector<double>& R_grid,
                                        const std::vector<double>& nu_grid,
                                        const ConvergenceOptions& opts = {});

}  // namespace mollify
