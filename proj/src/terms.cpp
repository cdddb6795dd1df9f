#include "mollify/terms.hpp"

#include <cmath>
#include <sstream>

#include "mollify/error.hpp"

namespace mollify {

namespace {

constexpr double kBoundSlack = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

double ipow(double x, int n) {
  double out = 1.0;
  for (int k = 0; k < n; ++k) out *= x;
  return out;
}

void require_ell(int ell, int min_ell) {
  if (ell < min_ell || ell > Jet2::kMaxOrder) {
    throw std::invalid_argument("piece index " + std::to_string(ell) + " outside [" +
                                std::to_string(min_ell) + ", " + std::to_string(Jet2::kMaxOrder) +
                                "]");
  }
}

Jet2 transpose(const Jet2& a) {
  Jet2 out(a.order_y(), a.order_x());
  for (int i = 0; i <= a.order_x(); ++i)
    for (int j = 0; j <= a.order_y(); ++j) out(j, i) = a(i, j);
  return out;
}

}  // namespace

std::string to_string(Convention c) {
  return c == Convention::section5 ? "section5" : "one-piece";
}

Convention convention_from_string(const std::string& s) {
  if (s == "section5") return Convention::section5;
  if (s == "one-piece" || s == "one_piece") return Convention::one_piece;
  throw std::invalid_argument("unknown convention '" + s + "' (expected section5 or one-piece)");
}

double nu1_bound(double theta) { return (1.0 - 2.0 * theta) / (4.0 + 2.0 * theta); }
double nul_bound(double theta) { return (1.0 - 2.0 * theta) / (4.0 + 6.0 * theta); }

std::vector<std::string> MollifierSpec::violations() const {
  std::vector<std::string> out;
  auto add = [&out](const auto&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    out.push_back(msg.str());
  };
  if (pieces.empty()) add("at least one mollifier piece is required");
  if (pieces.size() != nu.size()) {
    add("got ", pieces.size(), " polynomials but ", nu.size(), " length exponents");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].piece() != static_cast<int>(i) + 1) {
      add("polynomial ", i + 1, " is tagged as piece ", pieces[i].piece());
    }
  }
  if (!(R > 0.0)) add("R = ", R, " must be positive");
  if (!(theta >= 0.0 && theta <= 7.0 / 64.0)) add("theta = ", theta, " outside [0, 7/64]");
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0)) add("nu_", i + 1, " = ", nu[i], " must be positive");
  }
  if (!strict) return out;

  for (const auto& p : pieces) {
    if (auto why = MollifierPolynomial::constraint_violation(p.piece(), p.poly()); !why.empty()) {
      out.push_back(why);
    }
  }
  if (std::abs(q(0.0) - 1.0) > SmoothingPolynomial::kUnitValueTolerance) {
    add("Q(0) = ", q(0.0), " violates Q(0) = 1");
  }
  if (!nu.empty() && nu[0] > nu1_bound(theta) + kBoundSlack) {
    add("nu_1 = ", nu[0], " exceeds (1-2 theta)/(4+2 theta) = ", nu1_bound(theta));
  }
  for (std::size_t i = 1; i < nu.size(); ++i) {
    if (nu[i] > nul_bound(theta) + kBoundSlack) {
      add("nu_", i + 1, " = ", nu[i], " exceeds (1-2 theta)/(4+6 theta) = ", nul_bound(theta));
    }
    if (nu[i] > nu[0]) add("nu_", i + 1, " = ", nu[i], " exceeds nu_1 = ", nu[0]);
    if (!(nu[i - 1] + nu[i] < 1.0)) {
      add("nu_", i, " + nu_", i + 1, " = ", nu[i - 1] + nu[i], " violates nu_l + nu_{l+1} < 1");
    }
  }
  return out;
}

void MollifierSpec::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "inadmissible mollifier spec:";
  for (const auto& s : v) msg += "\n  " + s;
  throw SpecError(msg);
}

// c_{1,1}

TermValue c11_reduced(const Polynomial& p1, const Polynomial& q, double R, double theta,
                      const ConvergenceOptions& opts) {
  if (!(theta > 0.0)) throw SpecError("c11_reduced: theta must be positive");
  auto integrand = [&](const Point& pt) {
    const double u = pt[0];
    const double v = pt[1];
    const Jet2 inner = exp_affine(R * theta, 0.0, 0.0, 1, 0) *
                       compose_affine(q, theta, 0.0, v, 1, 0) *
                       compose_affine(p1, 1.0, 0.0, u, 1, 0);
    const double d = inner(1, 0);
    return std::exp(2.0 * R * v) * d * d;
  };
  const auto res = converge_cube(integrand, 2, opts);
  return {1.0 + res.value / theta, res.error_estimate / theta, res.order};
}

double c11_closed_form(double R, double theta) {
  const double n = theta;
  const double R2 = R * R;
  const double R3 = R2 * R;
  const double num = 3.0 + 6.0 * R - 2.0 * R3 * (n - 3.0) * n + 2.0 * R3 * R * n * n +
                     R2 * (6.0 + n * n) - std::exp(2.0 * R) * (3.0 + R2 * n * n);
  return 1.0 - num / (12.0 * R3 * n);
}

// c_{l,l}

double diagonal_prefactor(int ell) {
  require_ell(ell, 2);
  const double gamma = factorial(ell - 2);  // Gamma(l - 1)
  const int k = ell * ell + (ell - 1) * (ell - 1) - 1;
  const double lf = factorial(ell);
  return ipow(2.0, 2 * ell * (ell - 1)) / (gamma * gamma * factorial(k)) * lf * lf;
}

Jet2 diagonal_integrand(const Polynomial& p_deriv, int ell, const Polynomial& q, double R,
                        double theta, double t, double r, double u, double v, double x0,
                        double y0, int order) {
  const int m = order;
  // S = x + y - v (y + r) - u (x + r)
  const double sx = 1.0 - u;
  const double sy = 1.0 - v;
  const double s0 = x0 * sx + y0 * sy - (u + v) * r;
  const double w0 = 1.0 + theta * s0;  // 1 + theta S

  Jet2 f = Jet2::affine(sx, sy, 1.0 / theta + s0, m, m);
  // -theta R S + 2 R t (1 + theta S)
  const double ek = theta * R * (2.0 * t - 1.0);
  f = f * exp_affine(ek * sx, ek * sy, 2.0 * R * t + ek * s0, m, m);
  // Q(theta (-x + v (y + r)) + t (1 + theta S))
  f = f * compose_affine(q, theta * (t * sx - 1.0), theta * (v + t * sy),
                         theta * (-x0 + v * (y0 + r)) + t * w0, m, m);
  // Q(theta (-y + u (x + r)) + t (1 + theta S))
  f = f * compose_affine(q, theta * (u + t * sx), theta * (t * sy - 1.0),
                         theta * (-y0 + u * (x0 + r)) + t * w0, m, m);
  if (ell > 1) {
    const Polynomial power = Polynomial::monomial(ell - 1);
    f = f * compose_affine(power, 1.0, 0.0, x0 + r, m, m);
    f = f * compose_affine(power, 0.0, 1.0, y0 + r, m, m);
  }
  f = f * compose_affine(p_deriv, 1.0 - u, 0.0, (1.0 - u) * (x0 + r), m, m);
  f = f * compose_affine(p_deriv, 0.0, 1.0 - v, (1.0 - v) * (y0 + r), m, m);
  const int k = ell * ell + (ell - 1) * (ell - 1) - 1;
  f *= ipow(1.0 - r, k) * ipow(u, ell - 2) * ipow(v, ell - 2);
  return f;
}

TermValue c_ll(const Polynomial& p, int ell, const Polynomial& q, double R, double theta,
               const ConvergenceOptions& opts, bool swap_axes) {
  require_ell(ell, 1);
  if (ell == 1) return c11_reduced(p, q, R, theta, opts);
  if (!(theta > 0.0)) throw SpecError("c_ll: theta must be positive");
  const Polynomial deriv = p.derivative(ell * (ell - 1));
  if (deriv.is_zero()) return {0.0, 0.0, 0};
  auto integrand = [&](const Point& pt) {
    if (swap_axes) {
      return transpose(diagonal_integrand(deriv, ell, q, R, theta, pt[0], pt[1], pt[3], pt[2],
                                          0.0, 0.0, ell));
    }
    return diagonal_integrand(deriv, ell, q, R, theta, pt[0], pt[1], pt[2], pt[3], 0.0, 0.0, ell);
  };
  const auto res = converge(
      [&](int n) { return integrate_cube(integrand, 4, gauss_legendre_rule(n))(ell, ell); }, opts);
  const double pre = diagonal_prefactor(ell);
  return {pre * res.value, std::abs(pre) * res.error_estimate, res.order};
}

// c_{l,l+1}

double cross_prefactor(int ell, double R, double theta_l, double theta_next) {
  require_ell(ell, 1);
  const double lf = factorial(ell);
  return ipow(2.0, 2 * ell * ell) / factorial(2 * ell * ell - 1) *
         ipow(theta_next / theta_l, ell * (ell + 1)) * std::exp(R) * lf * lf;
}

Jet2 cross_integrand(const Polynomial& p_l_deriv, const Polynomial& p_next_deriv, int ell,
                     const Polynomial& q, double R, double theta_l, double theta_next, double u,
                     double a, double b, double x0, double y0, int order) {
  const int m = order;
  // exp(R [theta_l (y - x) + u theta_next (a - b)])
  Jet2 f = exp_affine(-R * theta_l, R * theta_l,
                      R * (theta_l * (y0 - x0) + u * theta_next * (a - b)), m, m);
  // Q(-x theta_l + a u theta_next) Q(1 + y theta_l - b u theta_next)
  f = f * compose_affine(q, -theta_l, 0.0, -x0 * theta_l + a * u * theta_next, m, m);
  f = f * compose_affine(q, 0.0, theta_l, 1.0 + y0 * theta_l - b * u * theta_next, m, m);
  // P_l^{(l(l-1))}(x + y + 1 - (1 - u) theta_next / theta_l)
  f = f * compose_affine(p_l_deriv, 1.0, 1.0,
                         x0 + y0 + 1.0 - (1.0 - u) * theta_next / theta_l, m, m);
  const double scalar = ipow(u, 2 * ell) * ipow(1.0 - u, 2 * ell * ell - 1) *
                        p_next_deriv((1.0 - a - b) * u) * ipow(a * b, ell - 1);
  f *= scalar;
  return f;
}

TermValue c_l_lplus1(const Polynomial& p_l, const Polynomial& p_next, int ell,
                     const Polynomial& q, double R, double theta_l, double theta_next,
                     const ConvergenceOptions& opts) {
  require_ell(ell, 1);
  if (!(theta_l > 0.0 && theta_next > 0.0)) throw SpecError("c_l_lplus1: theta must be positive");
  const Polynomial dl = p_l.derivative(ell * (ell - 1));
  const Polynomial dn = p_next.derivative(ell * (ell + 1));
  if (dl.is_zero() || dn.is_zero()) return {0.0, 0.0, 0};
  // (u, a, t) with b = (1 - a) t on the simplex.
  auto integrand = [&](const Point& pt) {
    const double u = pt[0];
    const double a = pt[1];
    const double b = (1.0 - a) * pt[2];
    return cross_integrand(dl, dn, ell, q, R, theta_l, theta_next, u, a, b, 0.0, 0.0, ell) *
           (1.0 - a);
  };
  const auto res = converge(
      [&](int n) { return integrate_cube(integrand, 3, gauss_legendre_rule(n))(ell, ell); }, opts);
  const double pre = cross_prefactor(ell, R, theta_l, theta_next);
  return {pre * res.value, std::abs(pre) * res.error_estimate, res.order};
}

// Spec level

double frame_R(const MollifierSpec& spec) {
  return spec.convention == Convention::section5 ? 2.0 * spec.R : spec.R;
}

double frame_theta(const MollifierSpec& spec, int ell) {
  if (ell < 1 || ell > static_cast<int>(spec.nu.size())) {
    throw std::out_of_range("no length exponent for piece " + std::to_string(ell));
  }
  const double nu = spec.nu[static_cast<std::size_t>(ell - 1)];
  return spec.convention == Convention::section5 ? nu / 2.0 : nu;
}

TermValue c_ll(const MollifierSpec& spec, int ell, const ConvergenceOptions& opts) {
  if (ell < 1 || ell > spec.piece_count()) {
    throw std::out_of_range("c_ll: piece " + std::to_string(ell) + " not in spec");
  }
  return c_ll(spec.pieces[static_cast<std::size_t>(ell - 1)].poly(), ell, spec.q.monomial(),
              frame_R(spec), frame_theta(spec, ell), opts);
}

TermValue c_l_lplus1(const MollifierSpec& spec, int ell, const ConvergenceOptions& opts) {
  if (ell < 1 || ell >= spec.piece_count()) {
    throw std::out_of_range("c_l_lplus1: pieces " + std::to_string(ell) + ", " +
                            std::to_string(ell + 1) + " not in spec");
  }
  return c_l_lplus1(spec.pieces[static_cast<std::size_t>(ell - 1)].poly(),
                    spec.pieces[static_cast<std::size_t>(ell)].poly(), ell, spec.q.monomial(),
                    frame_R(spec), frame_theta(spec, ell), frame_theta(spec, ell + 1), opts);
}

double kappa_bound(double c_total, double R) {
  if (!(c_total > 0.0)) throw SpecError("kappa_bound: c must be positive");
  if (!(R > 0.0)) throw SpecError("kappa_bound: R must be positive");
  return 1.0 - std::log(c_total) / (2.0 * R);
}

double kappa_one_piece(double c11, double R) {
  if (!(c11 > 0.0)) throw SpecError("kappa_one_piece: c must be positive");
  if (!(R > 0.0)) throw SpecError("kappa_one_piece: R must be positive");
  return 1.0 - std::log(c11) / R;
}

double kappa_for(const MollifierSpec& spec, double c_total) {
  return spec.convention == Convention::section5 ? kappa_bound(c_total, spec.R)
                                                 : kappa_one_piece(c_total, spec.R);
}

TermMatrix combine(const MollifierSpec& spec, const ConvergenceOptions& opts) {
  spec.validate();
  TermMatrix out;
  for (int ell = 1; ell <= spec.piece_count(); ++ell) {
    out.c_diag.push_back(c_ll(spec, ell, opts));
    out.c_total += out.c_diag.back().value;
    out.c_error += out.c_diag.back().error_estimate;
  }
  for (int ell = 1; ell < spec.piece_count(); ++ell) {
    out.c_super.push_back(c_l_lplus1(spec, ell, opts));
    out.c_total += 2.0 * out.c_super.back().value;
    out.c_error += 2.0 * out.c_super.back().error_estimate;
  }
  out.kappa = kappa_for(spec, out.c_total);
  out.kappa_error = out.c_error / (std::abs(out.c_total) * frame_R(spec));
  return out;
}

std::vector<SurfacePoint> kappa_surface(const Polynomial& p, const Polynomial& q,
                                        const std::vector<double>& R_grid,
                                        const std::vector<double>& nu_grid,
                                        const ConvergenceOptions& opts) {
  if (R_grid.empty() || nu_grid.empty()) throw std::invalid_argument("kappa_surface: empty grid");
  const bool linear_case = p == Polynomial({0.0, 1.0}) && q == Polynomial({1.0, -1.0});
  std::vector<SurfacePoint> out;
  out.reserve(R_grid.size() * nu_grid.size());
  for (double nu : nu_grid) {
    for (double R : R_grid) {
      const double c = linear_case ? c11_closed_form(R, nu) : c11_reduced(p, q, R, nu, opts).value;
      out.push_back({R, nu, kappa_one_piece(c, R)});
    }
  }
  return out;
}

}  // namespace mollify
