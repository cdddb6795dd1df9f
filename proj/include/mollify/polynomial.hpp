#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mollify {

/// Real polynomial in the monomial basis; coeffs()[i] multiplies x^i.
class Polynomial {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(int power, double coefficient = 1.0);

  /// Horner evaluation.
  double operator()(double x) const;

  /// m-th formal derivative.
  Polynomial derivative(int m = 1) const;

  int degree() const;
  bool is_zero() const { return degree() == kZeroDegree; }

  double coeff(int power) const;
  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& other) const;

 private:
  std::vector<double> coeffs_;
};

/// (c0 + c1 x)^n expanded in the monomial basis.
Polynomial binomial_power(double c0, double c1, int n);

/// Mollifier piece P_l. For l = 1 the constraints are P(0) = 0 and P(1) = 1;
/// for l > 1 the coefficients of x^0 .. x^{l(l-1)} vanish.
class MollifierPolynomial {
 public:
  /// Tolerance on P_1(1) = 1. Printed six-digit coefficients do not sum to
  /// exactly one.
  static constexpr double kUnitValueTolerance = 1e-5;

  /// Wraps p, checking the piece constraints when strict is set.
  MollifierPolynomial(int piece, Polynomial p, bool strict = true);

  /// Builds from the unconstrained parametrization. For l = 1, free holds the
  /// coefficients of x^2 .. x^d and the x coefficient is solved from P(1) = 1.
  /// For l > 1, free holds the coefficients of x^{l(l-1)+1} .. x^d.
  static MollifierPolynomial from_free(int piece, std::span<const double> free);

  /// Inverse of from_free (drops the dependent x coefficient for l = 1).
  std::vector<double> free_coefficients() const;

  /// Lowest power carried in the free parametrization.
  static int first_free_power(int piece);

  /// Empty string when the constraints hold, otherwise a diagnostic naming
  /// the violated condition.
  static std::string constraint_violation(int piece, const Polynomial& p);

  int piece() const { return piece_; }
  const Polynomial& poly() const { return poly_; }
  double operator()(double x) const { return poly_(x); }

 private:
  int piece_;
  Polynomial poly_;
};

/// Q(x) = a0 + sum_i c_i (1 - 2x)^{2i+1}. Odd powers of (1 - 2x) are
/// antisymmetric about x = 1/2, so Q(x) + Q(1 - x) = 2 a0.
class SmoothingPolynomial {
 public:
  static constexpr double kUnitValueTolerance = 1e-5;

  /// a0 is implied by Q(0) = 1.
  static SmoothingPolynomial from_odd(std::vector<double> odd);

  /// Explicit a0; strict mode checks |Q(0) - 1| <= kUnitValueTolerance.
  SmoothingPolynomial(double a0, std::vector<double> odd, bool strict = true);

  double constant_term() const { return a0_; }
  std::span<const double> odd_coeffs() const { return odd_; }

  double operator()(double x) const { return monomial_(x); }
  const Polynomial& monomial() const { return monomial_; }

 private:
  double a0_;
  std::vector<double> odd_;
  Polynomial monomial_;
};

}  // namespace mollify
